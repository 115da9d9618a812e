#include "conelab/special.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <string>

#include "conelab/linalg.hpp"

namespace conelab {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double erfc(double x) { return std::erfc(x); }

double reg_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0))
    throw DomainError("reg_incomplete_beta: need a, b > 0 and 0 <= x <= 1 (a=" +
                      std::to_string(a) + ", b=" + std::to_string(b) +
                      ", x=" + std::to_string(x) + ")");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double log_binomial(double n, double k) {
  if (!(n + 1.0 > 0.0) || !(k + 1.0 > 0.0) || !(n - k + 1.0 > 0.0))
    throw DomainError("log_binomial: arguments outside the positive gamma domain");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double harmonic_number(long d) {
  // summed smallest-first to limit rounding
  double h = 0.0;
  for (long i = d; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

double brent_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw DomainError("brent_root: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw DomainError("brent_root: no sign change in bracket");

  std::uintmax_t max_iter = 500;
  auto done = [&](double a, double b) { return std::abs(b - a) <= tol; };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, max_iter);
  if (max_iter >= 500) throw NumericalError("brent_root: iteration budget exhausted");
  // return whichever end of the final bracket has the smaller residual
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

}  // namespace conelab
