#include "conelab/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "conelab/linalg.hpp"

namespace conelab {

double LogisticFit::width_5_95() const {
  return beta1 == 0.0 ? HUGE_VAL : 2.0 * std::log(19.0) / std::abs(beta1);
}

namespace {

struct Pooled {
  double x;
  double s;  // successes
  double n;  // trials
};

std::vector<Pooled> pool(std::span<const BinomialPoint> points) {
  std::map<double, Pooled> by_x;
  for (const auto& p : points) {
    if (p.trials < 0 || p.successes < 0 || p.successes > p.trials)
      throw DomainError("logistic_fit: need 0 <= successes <= trials");
    if (p.trials == 0) continue;
    auto& q = by_x.try_emplace(p.x, Pooled{p.x, 0.0, 0.0}).first->second;
    q.s += static_cast<double>(p.successes);
    q.n += static_cast<double>(p.trials);
  }
  std::vector<Pooled> out;
  for (auto& [x, q] : by_x) out.push_back(q);
  return out;
}

LogisticFit clamped(double mu, double sign) {
  LogisticFit f;
  f.beta1 = sign * kLogisticSlopeCap;
  f.beta0 = -f.beta1 * mu;
  f.mu = mu;
  f.separated = true;
  return f;
}

// Returns true and fills `fit` if the pooled data admit no finite maximiser
// with the given slope sign (+1: failures left, successes right).
bool separated(const std::vector<Pooled>& pts, double sign, LogisticFit& fit) {
  const std::size_t n = pts.size();
  auto low = [&](std::size_t i) {  // on the failure side for this orientation
    return sign > 0 ? pts[i].s == 0.0 : pts[i].s == pts[i].n;
  };
  auto high = [&](std::size_t i) { return sign > 0 ? pts[i].s == pts[i].n : pts[i].s == 0.0; };
  std::size_t k = 0;
  while (k < n && low(k)) ++k;
  std::size_t j = k;
  if (j < n && !high(j)) ++j;  // at most one mixed abscissa on the boundary
  for (std::size_t i = j; i < n; ++i)
    if (!high(i)) return false;
  if (j == k + 1) {
    // quasi-complete separation: the likelihood is maximised with the step
    // placed at the mixed abscissa
    if (k == 0 && j == n) return false;
    fit = clamped(pts[k].x, sign);
    return true;
  }
  if (k == 0 || k == n) return false;  // one-sided, handled by the caller
  fit = clamped(0.5 * (pts[k - 1].x + pts[k].x), sign);
  return true;
}

}  // namespace

LogisticFit logistic_fit(std::span<const BinomialPoint> points, double orientation) {
  const std::vector<Pooled> pts = pool(points);
  if (pts.size() < 2) throw DomainError("logistic_fit: need at least two distinct abscissas");

  const double spacing = (pts.back().x - pts.front().x) / static_cast<double>(pts.size() - 1);
  const bool all_success =
      std::all_of(pts.begin(), pts.end(), [](const Pooled& p) { return p.s == p.n; });
  const bool all_failure =
      std::all_of(pts.begin(), pts.end(), [](const Pooled& p) { return p.s == 0.0; });
  const double sign = orientation < 0.0 ? -1.0 : 1.0;
  if (all_success || all_failure) {
    // the transition lies beyond whichever end the orientation points to
    const bool below = all_success == (sign > 0.0);
    return clamped(below ? pts.front().x - 0.5 * spacing : pts.back().x + 0.5 * spacing, sign);
  }

  LogisticFit fit;
  if (separated(pts, 1.0, fit) || separated(pts, -1.0, fit)) return fit;

  // IRLS on standardized abscissas
  double xbar = 0.0;
  for (const auto& p : pts) xbar += p.x;
  xbar /= static_cast<double>(pts.size());
  double xs = 0.0;
  for (const auto& p : pts) xs += (p.x - xbar) * (p.x - xbar);
  xs = std::sqrt(xs / static_cast<double>(pts.size()));
  if (xs == 0.0) xs = 1.0;

  double b0 = 0.0;
  double b1 = 0.0;
  constexpr double ridge = 1e-8;
  int it = 0;
  for (; it < 100; ++it) {
    double h00 = ridge, h01 = 0.0, h11 = ridge, g0 = 0.0, g1 = 0.0;
    for (const auto& p : pts) {
      const double u = (p.x - xbar) / xs;
      const double eta = b0 + b1 * u;
      const double mu = 1.0 / (1.0 + std::exp(-eta));
      const double w = p.n * mu * (1.0 - mu);
      const double r = p.s - p.n * mu;
      g0 += r;
      g1 += r * u;
      h00 += w;
      h01 += w * u;
      h11 += w * u * u;
    }
    g0 -= ridge * b0;
    g1 -= ridge * b1;
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0.0)) break;
    const double d0 = (h11 * g0 - h01 * g1) / det;
    const double d1 = (h00 * g1 - h01 * g0) / det;
    b0 += d0;
    b1 += d1;
    if (std::abs(d0) + std::abs(d1) < 1e-12 * (1.0 + std::abs(b0) + std::abs(b1))) {
      ++it;
      break;
    }
  }
  fit.beta1 = b1 / xs;
  fit.beta0 = b0 - fit.beta1 * xbar;
  fit.iterations = it;
  if (std::abs(fit.beta1) > kLogisticSlopeCap || !std::isfinite(fit.beta1)) {
    const double mu = -fit.beta0 / fit.beta1;
    const double sign = fit.beta1 >= 0.0 ? 1.0 : -1.0;
    LogisticFit c = clamped(std::isfinite(mu) ? mu : xbar, sign);
    c.iterations = it;
    return c;
  }
  fit.mu = fit.beta1 != 0.0 ? -fit.beta0 / fit.beta1 : xbar;
  return fit;
}

}  // namespace conelab
