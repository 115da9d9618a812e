#include <algorithm>
#include <cmath>
#include <numbers>

#include "conelab/kinematics.hpp"
#include "conelab/special.hpp"

namespace conelab {

IntrinsicVolumes ivols_subspace(Index j, Index d) {
  if (d < 0 || j < 0 || j > d) throw DomainError("ivols_subspace: need 0 <= j <= d");
  IntrinsicVolumes iv{d, Vector::Zero(d + 1), true};
  iv.v[j] = 1.0;
  return iv;
}

IntrinsicVolumes ivols_orthant(Index d) {
  if (d < 1) throw DomainError("ivols_orthant: need d >= 1");
  IntrinsicVolumes iv{d, Vector(d + 1), false};
  const double dd = static_cast<double>(d);
  for (Index k = 0; k <= d; ++k)
    iv.v[k] = std::exp(log_binomial(dd, static_cast<double>(k)) - dd * std::numbers::ln2);
  return iv;
}

IntrinsicVolumes ivols_circular(Index d, double alpha) {
  if (d < 1) throw DomainError("ivols_circular: need d >= 1");
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2))
    throw DomainError("ivols_circular: angle must lie in [0, pi/2]");
  if (d == 1) return ivols_orthant(1);
  // degenerate angles: a ray, and a halfspace
  if (alpha == 0.0) return ivols_product(ivols_orthant(1), ivols_subspace(0, d - 1));
  if (alpha == std::numbers::pi / 2)
    return ivols_product(ivols_orthant(1), ivols_subspace(d - 1, d - 1));

  IntrinsicVolumes iv{d, Vector::Zero(d + 1), false};
  const double dd = static_cast<double>(d);
  const double ls = std::log(std::sin(alpha));
  const double lc = std::log(std::cos(alpha));
  for (Index k = 1; k <= d - 1; ++k) {
    const double kk = static_cast<double>(k);
    const double lb = log_binomial((dd - 2) / 2, (kk - 1) / 2);
    iv.v[k] = 0.5 * std::exp(lb + (kk - 1) * ls + (dd - kk - 1) * lc);
  }
  // cap of angle a on the sphere in R^d has mass (1/2) I_{sin^2 a}((d-1)/2, 1/2)
  const double s2 = std::sin(alpha) * std::sin(alpha);
  iv.v[d] = 0.5 * reg_incomplete_beta((dd - 1) / 2, 0.5, s2);
  iv.v[0] = 0.5 * reg_incomplete_beta((dd - 1) / 2, 0.5, 1.0 - s2);

  const double residual = 1.0 - iv.v.sum();
  if (std::abs(residual) > 1e-8)
    throw NumericalError("ivols_circular: residual mass " + std::to_string(residual));
  iv.v[0] += 0.5 * residual;
  iv.v[d] += 0.5 * residual;
  return iv;
}

IntrinsicVolumes ivols_product(const IntrinsicVolumes& a, const IntrinsicVolumes& b) {
  IntrinsicVolumes out{a.d + b.d, Vector::Zero(a.d + b.d + 1), a.is_subspace && b.is_subspace};
  for (Index i = 0; i <= a.d; ++i)
    for (Index j = 0; j <= b.d; ++j) out.v[i + j] += a.v[i] * b.v[j];
  return out;
}

IntrinsicVolumes ivols_polar(const IntrinsicVolumes& a) {
  IntrinsicVolumes out = a;
  out.v = a.v.reverse();
  return out;
}

IntrinsicVolumes ivols_of(const ConeSpec& cone) {
  using K = ConeSpec::Kind;
  switch (cone.kind()) {
    case K::subspace:
      return ivols_subspace(cone.order(), cone.ambient_dimension());
    case K::orthant:
      return ivols_orthant(cone.order());
    case K::second_order:
      return ivols_circular(cone.order(), std::numbers::pi / 4);
    case K::circular:
      return ivols_circular(cone.order(), cone.angle());
    case K::product: {
      IntrinsicVolumes acc = ivols_of(cone.blocks().front());
      for (std::size_t i = 1; i < cone.blocks().size(); ++i)
        acc = ivols_product(acc, ivols_of(cone.blocks()[i]));
      return acc;
    }
    case K::polar:
      return ivols_polar(ivols_of(cone.inner()));
    case K::psd:
      break;
  }
  throw DomainError("ivols: no intrinsic-volume formula for " + cone.describe());
}

double tail(const IntrinsicVolumes& iv, Index k) {
  if (k < 0 || k > iv.d + 1) throw DomainError("tail: index out of range");
  double acc = 0.0;
  for (Index i = iv.d; i >= k; --i) acc += iv.v[i];
  return acc;
}

double half_tail(const IntrinsicVolumes& iv, Index k) {
  if (k < 0 || k > iv.d + 1) throw DomainError("half_tail: index out of range");
  double acc = 0.0;
  for (Index i = k; i <= iv.d; i += 2) acc += iv.v[i];
  return acc;
}

double statdim_from_ivols(const IntrinsicVolumes& iv) {
  double acc = 0.0;
  for (Index k = 1; k <= iv.d; ++k) acc += static_cast<double>(k) * iv.v[k];
  return acc;
}

double IvolsDefects::worst() const {
  return std::max({mass, negativity, gauss_bonnet, interlacing});
}

IvolsDefects check_ivols(const IntrinsicVolumes& iv) {
  IvolsDefects out;
  if (iv.v.size() != iv.d + 1) throw DomainError("check_ivols: length is not d + 1");
  out.mass = std::abs(iv.v.sum() - 1.0);
  out.negativity = std::max(0.0, -iv.v.minCoeff());
  if (iv.is_subspace) return out;
  const double even = half_tail(iv, 0);
  const double odd = iv.d >= 1 ? half_tail(iv, 1) : 0.0;
  out.gauss_bonnet = std::max(std::abs(even - 0.5), std::abs(odd - 0.5));
  for (Index k = 0; k < iv.d; ++k) {
    const double t = tail(iv, k);
    out.interlacing = std::max({out.interlacing, t - 2.0 * half_tail(iv, k),
                                2.0 * half_tail(iv, k + 1) - t});
  }
  return out;
}

}  // namespace conelab
