#include <algorithm>
#include <cmath>

#include "conelab/statdim.hpp"

namespace conelab {

StatDimEstimate statdim_monte_carlo(const ConeSpec& cone, std::int64_t samples,
                                    const RngStream& rng, Exec exec) {
  if (samples < 2) throw DomainError("statdim_monte_carlo: need at least two samples");
  const Index d = cone.ambient_dimension();
  const Moments m = chunked_reduce<Moments>(
      samples, kDefaultChunk,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(c)).engine();
        Vector proj(d);
        Moments part;
        for (std::int64_t i = begin; i < end; ++i) {
          const Vector g = gaussian_vector(d, eng);
          project_into(cone, g, proj);
          part.add(proj.squaredNorm());
        }
        return part;
      },
      [](Moments& acc, const Moments& p) { acc.merge(p); }, Moments{}, exec);

  StatDimEstimate e;
  e.method = StatDimMethod::monte_carlo;
  e.std_error = m.stderr_of_mean();
  const double mean = m.mean();
  e.value = std::clamp(mean, 0.0, static_cast<double>(d));
  e.lower = std::min(e.value, mean - 3.0 * e.std_error);
  e.upper = std::max(e.value, mean + 3.0 * e.std_error);
  return e;
}

namespace {

// sup of <g, x> over unit x in a rotationally symmetric cone about `axis`
double round_support(Eigen::Ref<const Vector> g, Index axis, double ca, double sa) {
  const double t = g[axis];
  const double r = std::sqrt(std::max(0.0, g.squaredNorm() - t * t));
  const double norm = std::hypot(t, r);
  if (t >= norm * ca) return norm;
  return t * ca + r * sa;
}

}  // namespace

double sphere_support(const ConeSpec& cone, Eigen::Ref<const Vector> g) {
  using K = ConeSpec::Kind;
  switch (cone.kind()) {
    case K::subspace:
      if (cone.order() == 0) return 0.0;
      return (cone.basis().transpose() * g).norm();
    case K::orthant: {
      const double top = g.maxCoeff();
      return top > 0.0 ? g.cwiseMax(0.0).norm() : top;
    }
    case K::second_order: {
      constexpr double h = 0.70710678118654752440;
      return round_support(g, g.size() - 1, h, h);
    }
    case K::circular:
      return round_support(g, 0, std::cos(cone.angle()), std::sin(cone.angle()));
    case K::psd: {
      const Vector lam = symmetric_eigen(smat(g, cone.order())).values;
      const double top = lam.maxCoeff();
      return top > 0.0 ? lam.cwiseMax(0.0).norm() : top;
    }
    case K::product: {
      double pos_sq = 0.0;
      double best = -HUGE_VAL;
      Index at = 0;
      for (const auto& b : cone.blocks()) {
        const Index k = b.ambient_dimension();
        const double w = sphere_support(b, g.segment(at, k));
        at += k;
        best = std::max(best, w);
        if (w > 0.0) pos_sq += w * w;
      }
      return best > 0.0 ? std::sqrt(pos_sq) : best;
    }
    case K::polar:
      break;
  }
  throw DomainError("gaussian_width_mc: unsupported cone " + cone.describe());
}

WidthEstimate gaussian_width_mc(const ConeSpec& cone, std::int64_t samples, const RngStream& rng,
                                Exec exec) {
  if (samples < 2) throw DomainError("gaussian_width_mc: need at least two samples");
  const Index d = cone.ambient_dimension();
  sphere_support(cone, Vector::Zero(d));  // rejects unsupported variants up front
  const Moments m = chunked_reduce<Moments>(
      samples, kDefaultChunk,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(c)).engine();
        Moments part;
        for (std::int64_t i = begin; i < end; ++i) part.add(sphere_support(cone, gaussian_vector(d, eng)));
        return part;
      },
      [](Moments& acc, const Moments& p) { acc.merge(p); }, Moments{}, exec);
  return {m.mean(), m.stderr_of_mean()};
}

}  // namespace conelab
