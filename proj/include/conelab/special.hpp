#pragma once

#include <functional>
#include <span>

namespace conelab {

double std_normal_cdf(double x);
double erfc(double x);

/// CDF of Beta(a, b) at x. Throws DomainError unless a, b > 0 and 0 <= x <= 1.
double reg_incomplete_beta(double a, double b, double x);

/// log of the binomial coefficient (n choose k) extended to real arguments
/// through the gamma function. Requires n + 1, k + 1, n - k + 1 > 0.
double log_binomial(double n, double k);

/// H_d = 1 + 1/2 + ... + 1/d.
double harmonic_number(long d);

/// Root of a function with f(lo) * f(hi) <= 0. Returns x with |f(x)| <= tol
/// or a bracket narrower than tol. Throws DomainError if the bracket does not
/// change sign and NumericalError if the iteration budget runs out.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Adaptive Gauss-Kronrod (7/15) quadrature with recursion depth cap 50.
/// Optional interior breakpoints split the interval at known kinks. Throws
/// NumericalError if the estimated absolute error exceeds tol.
double quadrature(const std::function<double(double)>& f, double a, double b, double tol,
                  std::span<const double> breakpoints = {});

struct Minimum {
  double x;
  double value;
};

/// Golden-section/parabolic minimisation of a unimodal function on [lo, hi].
Minimum minimize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                          int bits = 40);

}  // namespace conelab
