#include <algorithm>
#include <cmath>

#include "conelab/kinematics.hpp"
#include "conelab/special.hpp"

namespace conelab {

double tropic(Index k, Index d, double eps) {
  if (d < 1 || k < 0 || k > d) throw DomainError("tropic: need 0 <= k <= d, d >= 1");
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("tropic: eps must lie in [0, 1]");
  if (k == 0) return eps > 0.0 ? 0.0 : 1.0;
  if (k == d) return 1.0;
  return 1.0 - reg_incomplete_beta(0.5 * static_cast<double>(k),
                                   0.5 * static_cast<double>(d - k), eps);
}

double steiner_rhs(const IntrinsicVolumes& iv, double eps) {
  double acc = 0.0;
  for (Index k = 0; k <= iv.d; ++k)
    if (iv.v[k] != 0.0) acc += iv.v[k] * tropic(k, iv.d, eps);
  return acc;
}

Moments steiner_lhs_mc(const ConeSpec& cone, double eps, std::int64_t samples,
                       const RngStream& rng, Exec exec) {
  const Index d = cone.ambient_dimension();
  return chunked_reduce<Moments>(
      samples, kDefaultChunk,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(c)).engine();
        Vector proj(d);
        Moments part;
        for (std::int64_t i = begin; i < end; ++i) {
          Vector theta = gaussian_vector(d, eng);
          theta.normalize();
          project_into(cone, theta, proj);
          part.add(proj.squaredNorm() >= eps ? 1.0 : 0.0);
        }
        return part;
      },
      [](Moments& acc, const Moments& p) { acc.merge(p); }, Moments{}, exec);
}

ConcentrationBound concentration_bound(double delta, double delta_polar, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("concentration_bound: lambda must be non-negative");
  ConcentrationBound b;
  b.omega_sq = std::max(0.0, std::min(delta, delta_polar));
  if (lambda == 0.0) {
    b.raw = b.weakened = 4.0;
  } else {
    b.raw = 4.0 * std::exp(-(lambda * lambda / 8.0) / (b.omega_sq + lambda));
    b.weakened = lambda <= b.omega_sq
                     ? 4.0 * std::exp(-lambda * lambda / (16.0 * b.omega_sq))
                     : 4.0 * std::exp(-lambda / 16.0);
  }
  b.value = std::min(1.0, b.raw);
  return b;
}

double crofton(const IntrinsicVolumes& iv, Index m) {
  if (iv.is_subspace) throw DomainError("crofton: the cone must not be a subspace");
  if (m < 0 || m > iv.d) throw DomainError("crofton: codimension out of range");
  return 2.0 * half_tail(iv, m + 1);
}

double kinematic_exact(const IntrinsicVolumes& c, const IntrinsicVolumes& k) {
  if (c.is_subspace) throw DomainError("kinematic_exact: the cone must not be a subspace");
  if (c.d != k.d) throw DomainError("kinematic_exact: cones live in different dimensions");
  return 2.0 * half_tail(ivols_product(c, k), c.d + 1);
}

double a_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("a_eta: eta must lie in (0, 1)");
  return 4.0 * std::sqrt(std::log(4.0 / eta));
}

std::string to_string(KinematicPrediction::Verdict v) {
  switch (v) {
    case KinematicPrediction::Verdict::likely_hit:
      return "likely_hit";
    case KinematicPrediction::Verdict::likely_miss:
      return "likely_miss";
    case KinematicPrediction::Verdict::transition_zone:
      return "transition_zone";
  }
  return "unknown";
}

KinematicPrediction kinematic_predict(double delta_c, double delta_k, Index d, double eta) {
  if (d < 1) throw DomainError("kinematic_predict: need d >= 1");
  const double dd = static_cast<double>(d);
  KinematicPrediction p;
  p.a_eta = a_eta(eta);
  const double total = delta_c + delta_k;
  const double window = p.a_eta * std::sqrt(dd);
  if (total <= dd - window)
    p.verdict = KinematicPrediction::Verdict::likely_miss;
  else if (total >= dd + window)
    p.verdict = KinematicPrediction::Verdict::likely_hit;
  p.lambda = std::abs(total - dd) / 2.0;
  p.raw_bound = concentration_bound(delta_c, dd - delta_c, p.lambda).raw +
                concentration_bound(delta_k, dd - delta_k, p.lambda).raw;
  p.bound = std::clamp(p.raw_bound, 0.0, 1.0);
  return p;
}

ProductTail product_tail_check(const IntrinsicVolumes& c, const IntrinsicVolumes& k, double lambda) {
  auto idx = [](double x, Index d) {
    return std::clamp(static_cast<Index>(std::ceil(x)), Index{0}, d + 1);
  };
  const double dc = statdim_from_ivols(c);
  const double dk = statdim_from_ivols(k);
  ProductTail out;
  const IntrinsicVolumes ck = ivols_product(c, k);
  out.lhs = tail(ck, idx(dc + dk + 2.0 * lambda, ck.d));
  out.rhs = tail(c, idx(dc + lambda, c.d)) + tail(k, idx(dk + lambda, k.d));
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace conelab
