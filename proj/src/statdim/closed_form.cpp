#include <array>
#include <cmath>
#include <numbers>

#include "conelab/special.hpp"
#include "conelab/statdim.hpp"

namespace conelab {

std::string to_string(StatDimMethod m) {
  switch (m) {
    case StatDimMethod::closed_form:
      return "closed_form";
    case StatDimMethod::variational:
      return "variational";
    case StatDimMethod::monte_carlo:
      return "monte_carlo";
  }
  return "unknown";
}

double statdim_circular_exact(Index d, double alpha) {
  if (d < 1) throw DomainError("statdim_circular_exact: need d >= 1");
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2))
    throw DomainError("statdim_circular_exact: angle must lie in [0, pi/2]");
  if (d == 1) return 0.5;  // Circ_1(alpha) is the half-line for every alpha
  const double pi = std::numbers::pi;
  const double dd = static_cast<double>(d);
  const double log_pref = std::log(dd) + std::lgamma(dd / 2) - 0.5 * std::log(pi) -
                          std::lgamma((dd - 1) / 2);
  // |proj|^2 / |g|^2 as a function of the angle beta between g and the axis
  auto F = [alpha, pi](double beta) {
    if (beta < alpha) return 1.0;
    if (beta < pi / 2 + alpha) {
      const double c = std::cos(beta - alpha);
      return c * c;
    }
    return 0.0;
  };
  auto integrand = [&](double beta) {
    return (d == 2 ? 1.0 : std::pow(std::sin(beta), dd - 2)) * F(beta);
  };
  const std::array<double, 2> kinks{alpha, pi / 2 + alpha};
  const double upper = std::min(pi, pi / 2 + alpha);
  // the integral is O(1/sqrt(d)) and the prefactor O(sqrt(d))
  const double I = quadrature(integrand, 0.0, upper, 1e-11, kinks);
  return std::exp(log_pref) * I;
}

double statdim_circular_asymptotic(Index d, double alpha) {
  const double s = std::sin(alpha);
  return static_cast<double>(d) * s * s + std::cos(2 * alpha);
}

double statdim_permutahedron(Index d, bool signed_variant) {
  if (d < 1) throw DomainError("statdim_permutahedron: need d >= 1");
  const double h = harmonic_number(static_cast<long>(d));
  return signed_variant ? 0.5 * h : h;
}

namespace {

std::optional<double> exact_value(const ConeSpec& c) {
  using K = ConeSpec::Kind;
  const double d = static_cast<double>(c.ambient_dimension());
  switch (c.kind()) {
    case K::subspace:
      return static_cast<double>(c.order());
    case K::orthant:
    case K::second_order:
    case K::psd:
      return d / 2;  // self-dual
    case K::circular:
      return statdim_circular_exact(c.order(), c.angle());
    case K::product: {
      double sum = 0.0;
      for (const auto& b : c.blocks()) {
        const auto v = exact_value(b);
        if (!v) return std::nullopt;
        sum += *v;
      }
      return sum;
    }
    case K::polar: {
      const auto v = exact_value(c.inner());
      if (!v) return std::nullopt;
      return d - *v;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<StatDimEstimate> statdim_closed_form(const ConeSpec& cone) {
  const auto v = exact_value(cone);
  if (!v) return std::nullopt;
  StatDimEstimate e;
  e.value = e.lower = e.upper = *v;
  e.method = StatDimMethod::closed_form;
  return e;
}

}  // namespace conelab
