#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conelab/special.hpp"
#include "conelab/statdim.hpp"

namespace conelab {

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi / 2)

// integral of exp(-u^2/2) over [tau, inf)
double gauss_tail(double tau) { return kSqrtHalfPi * std::erfc(tau / std::numbers::sqrt2); }

}  // namespace

double psi_l1_tau(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("psi_l1: rho must lie in [0, 1]");
  if (rho == 0.0) return std::numeric_limits<double>::infinity();
  if (rho == 1.0) return 0.0;
  const double target = kSqrtHalfPi * rho / (1.0 - rho);
  // strictly decreasing from +inf to 0 on (0, inf)
  auto eq = [target](double tau) {
    return std::exp(-0.5 * tau * tau) / tau - gauss_tail(tau) - target;
  };
  constexpr double lo = 1e-12;
  constexpr double hi = 40.0;
  if (eq(lo) <= 0.0) return lo;
  if (eq(hi) >= 0.0) return hi;
  return brent_root(eq, lo, hi, 1e-14);
}

double psi_l1(double rho) {
  const double tau = psi_l1_tau(rho);
  if (rho == 0.0) return 0.0;
  if (rho == 1.0) return 1.0;
  const double t2 = 1.0 + tau * tau;
  const double tail_term =
      std::sqrt(2.0 / std::numbers::pi) * (t2 * gauss_tail(tau) - tau * std::exp(-0.5 * tau * tau));
  const double v = rho * t2 + (1.0 - rho) * tail_term;
  return std::clamp(v, 0.0, 1.0);
}

StatDimEstimate statdim_l1_descent(Index s, Index d) {
  if (d < 1 || s < 1 || s > d) throw DomainError("statdim_l1_descent: need 1 <= s <= d");
  const double dd = static_cast<double>(d);
  const double ds = static_cast<double>(s);
  StatDimEstimate e;
  e.method = StatDimMethod::variational;
  e.upper = e.value = dd * psi_l1(ds / dd);
  e.lower = std::max(ds - 1.0, e.value - 2.0 * std::sqrt(dd / ds));
  return e;
}

double mp_singular_integral(double y, double tau, const std::function<double(double)>& g) {
  if (!(y > 0.0 && y <= 1.0)) throw DomainError("mp_singular_integral: need 0 < y <= 1");
  const double sy = std::sqrt(y);
  const double c = (tau * tau - 1.0 - y) / (2.0 * sy);
  if (c >= 1.0) return 0.0;
  const double theta_max = c <= -1.0 ? std::numbers::pi : std::acos(c);
  auto integrand = [&](double theta) {
    const double ct = std::cos(theta);
    double weight;
    if (y == 1.0) {
      weight = (1.0 - ct) / std::numbers::pi;  // sin^2 / (2 + 2 cos) simplified
    } else {
      const double st = std::sin(theta);
      weight = 2.0 * st * st / (std::numbers::pi * (1.0 + y + 2.0 * sy * ct));
    }
    const double s = std::max(0.0, 1.0 + y + 2.0 * sy * ct);
    return g(std::sqrt(s)) * weight;
  };
  return quadrature(integrand, 0.0, theta_max, 1e-12);
}

PsiS1 psi_s1_detail(double rho, double nu) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("psi_s1: rho must lie in [0, 1]");
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("psi_s1: nu must lie in (0, 1]");
  if (rho == 0.0) return {0.0, std::numeric_limits<double>::infinity(), false};
  if (rho == 1.0) return {1.0, 0.0, false};
  PsiS1 out;
  constexpr double lo_clamp = 1e-3;
  if (rho < lo_clamp || rho > 1.0 - lo_clamp) {
    rho = std::clamp(rho, lo_clamp, 1.0 - lo_clamp);
    out.clamped = true;
  }
  if (nu < lo_clamp) {
    nu = lo_clamp;
    out.clamped = true;
  }
  const double y = (nu - rho * nu) / (1.0 - rho * nu);
  const double a_plus = 1.0 + std::sqrt(y);
  const double target = rho / (1.0 - rho);

  auto stationary = [&](double tau) {
    return mp_singular_integral(y, tau, [tau](double u) { return u - tau; }) / tau - target;
  };
  const double lo = 1e-10;
  out.tau = stationary(lo) <= 0.0 ? lo : brent_root(stationary, lo, a_plus, 1e-12);

  const double tau = out.tau;
  const double sq = mp_singular_integral(y, tau, [tau](double u) { return (u - tau) * (u - tau); });
  const double inner = rho * (1.0 + tau * tau) + (1.0 - rho) * sq;
  out.value = std::clamp(rho * nu + (1.0 - rho * nu) * inner, 0.0, 1.0);
  return out;
}

double psi_s1(double rho, double nu) { return psi_s1_detail(rho, nu).value; }

StatDimEstimate statdim_s1_descent(Index r, Index m, Index n, std::int64_t finite_size_samples,
                                   const RngStream& rng, Exec exec) {
  if (r < 1 || r > m || m > n) throw DomainError("statdim_s1_descent: need 1 <= r <= m <= n");
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  StatDimEstimate e;
  e.method = StatDimMethod::variational;
  e.asymptotic = true;
  e.upper = e.value = dm * dn * psi_s1(static_cast<double>(r) / dm, dm / dn);
  e.lower = std::max(0.0, e.value - 2.0 * std::sqrt(dm / static_cast<double>(r)));
  if (finite_size_samples > 0) {
    const RecipeCurve c =
        recipe_statdim(SubdifferentialModel::s1(r, m, n), finite_size_samples, rng, exec);
    e.finite_size = c.F_min;
    e.finite_size_std_error = c.std_error;
  }
  return e;
}

double descent_error_bound(const SubdifferentialModel& model) {
  switch (model.kind) {
    case SubdifferentialModel::Kind::l1:
      return 2.0 * std::sqrt(static_cast<double>(model.d) / static_cast<double>(model.s));
    case SubdifferentialModel::Kind::s1:
      return 2.0 * std::sqrt(static_cast<double>(model.m) / static_cast<double>(model.r));
    case SubdifferentialModel::Kind::generic:
      if (!(model.oracle.normalized_value > 0.0))
        throw DomainError("descent_error_bound: normalized value must be positive");
      return 2.0 * model.oracle.sup_norm / model.oracle.normalized_value;
  }
  return 0.0;
}

}  // namespace conelab
