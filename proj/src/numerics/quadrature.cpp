#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "conelab/linalg.hpp"
#include "conelab/special.hpp"

namespace conelab {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, Panel whole,
             int depth, double& err_acc, bool& capped) {
  if (whole.error <= tol || depth >= 50 || b - a <= 1e-15 * (std::abs(a) + std::abs(b))) {
    if (whole.error > tol) capped = true;
    err_acc += whole.error;
    return whole.value;
  }
  const double m = 0.5 * (a + b);
  const Panel left = gk15(f, a, m);
  const Panel right = gk15(f, m, b);
  return adapt(f, a, m, 0.5 * tol, left, depth + 1, err_acc, capped) +
         adapt(f, m, b, 0.5 * tol, right, depth + 1, err_acc, capped);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b, double tol,
                  std::span<const double> breakpoints) {
  if (!(a <= b)) throw DomainError("quadrature: need a <= b");
  if (a == b) return 0.0;
  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  double err = 0.0;
  bool capped = false;
  const double share = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi <= lo) continue;
    total += adapt(f, lo, hi, share, gk15(f, lo, hi), 0, err, capped);
  }
  if (!std::isfinite(total)) throw NumericalError("quadrature: non-finite integrand");
  if (err > tol) throw NumericalError("quadrature: error estimate " + std::to_string(err) +
                                      " exceeds tolerance " + std::to_string(tol));
  return total;
}

Minimum minimize_unimodal(const std::function<double(double)>& f, double lo, double hi, int bits) {
  std::uintmax_t max_iter = 500;
  auto [x, v] = boost::math::tools::brent_find_minima(f, lo, hi, bits, max_iter);
  return {x, v};
}

}  // namespace conelab
