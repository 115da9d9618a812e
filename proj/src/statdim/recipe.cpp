#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "conelab/special.hpp"
#include "conelab/statdim.hpp"

namespace conelab {

SubdifferentialModel SubdifferentialModel::l1(Index s, Index d) {
  if (d < 1 || s < 1 || s > d) throw DomainError("l1 model: need 1 <= s <= d");
  SubdifferentialModel m;
  m.kind = Kind::l1;
  m.s = s;
  m.d = d;
  return m;
}

SubdifferentialModel SubdifferentialModel::s1(Index r, Index rows, Index cols) {
  if (r < 1 || r > rows || rows > cols) throw DomainError("s1 model: need 1 <= r <= m <= n");
  SubdifferentialModel m;
  m.kind = Kind::s1;
  m.r = r;
  m.m = rows;
  m.n = cols;
  return m;
}

SubdifferentialModel SubdifferentialModel::generic(GenericOracle oracle) {
  if (oracle.dim < 1 || !oracle.dist2) throw DomainError("generic model: incomplete oracle");
  SubdifferentialModel m;
  m.kind = Kind::generic;
  m.oracle = std::move(oracle);
  return m;
}

Index SubdifferentialModel::ambient_dimension() const {
  switch (kind) {
    case Kind::l1:
      return d;
    case Kind::s1:
      return m * n;
    case Kind::generic:
      return oracle.dim;
  }
  return 0;
}

namespace {

// sum over v > tau of (v - tau)^2
double excess_sq(const Vector& v, double tau) {
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] > tau) acc += (v[i] - tau) * (v[i] - tau);
  return acc;
}

// dist^2(g, tau S) for one draw of the l1 or s1 model. The l1 draw is g in
// R^d with the support in the first s coordinates (signs +1 without loss of
// generality); the s1 draw is an m x n matrix whose leading r x r block
// carries the row and column spaces of the point.
double l1_dist2(const Vector& g, Index s, double tau) {
  double acc = 0.0;
  for (Index i = 0; i < s; ++i) acc += (g[i] - tau) * (g[i] - tau);
  return acc + excess_sq(g.tail(g.size() - s).cwiseAbs(), tau);
}

struct S1Parts {
  double quad = 0.0;   // |G11|^2 + |G12|^2 + |G21|^2
  double trace = 0.0;  // tr G11
  Vector sigma;        // singular values of G22
};

S1Parts s1_parts(const Matrix& G, Index r) {
  const Index m = G.rows();
  const Index n = G.cols();
  S1Parts p;
  p.quad = G.topRows(r).squaredNorm() + G.bottomLeftCorner(m - r, r).squaredNorm();
  p.trace = G.topLeftCorner(r, r).trace();
  p.sigma = (m > r) ? singular_values(G.bottomRightCorner(m - r, n - r)) : Vector(0);
  return p;
}

double s1_dist2(const S1Parts& p, Index r, double tau) {
  return p.quad - 2.0 * tau * p.trace + static_cast<double>(r) * tau * tau + excess_sq(p.sigma, tau);
}

// Pooled sufficient statistics: F(tau) = (A - 2 tau B + tau^2 c + T(tau)) / N
// where T sums (v - tau)_+^2 over the pooled values v.
struct Pool {
  double A = 0.0;
  double B = 0.0;
  std::vector<double> values;
};

struct PooledCurve {
  double A, B, c, N;
  std::vector<double> v;   // descending
  std::vector<double> p1;  // prefix sums of v
  std::vector<double> p2;  // prefix sums of v^2

  double operator()(double tau) const {
    const auto k = static_cast<std::size_t>(
        std::lower_bound(v.begin(), v.end(), tau, std::greater<double>()) - v.begin());
    const double kk = static_cast<double>(k);
    const double T = p2[k] - 2.0 * tau * p1[k] + kk * tau * tau;
    return (A - 2.0 * tau * B + tau * tau * c + std::max(0.0, T)) / N;
  }
};

PooledCurve pooled_curve(const SubdifferentialModel& model, std::int64_t samples,
                         const RngStream& rng, Exec exec) {
  const bool is_l1 = model.kind == SubdifferentialModel::Kind::l1;
  Pool pool = chunked_reduce<Pool>(
      samples, kDefaultChunk,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(c)).engine();
        Pool part;
        for (std::int64_t i = begin; i < end; ++i) {
          if (is_l1) {
            const Vector g = gaussian_vector(model.d, eng);
            part.A += g.head(model.s).squaredNorm();
            part.B += g.head(model.s).sum();
            for (Index j = model.s; j < model.d; ++j) part.values.push_back(std::abs(g[j]));
          } else {
            const S1Parts p = s1_parts(gaussian_matrix(model.m, model.n, eng), model.r);
            part.A += p.quad;
            part.B += p.trace;
            part.values.insert(part.values.end(), p.sigma.data(), p.sigma.data() + p.sigma.size());
          }
        }
        return part;
      },
      [](Pool& acc, Pool& p) {
        acc.A += p.A;
        acc.B += p.B;
        acc.values.insert(acc.values.end(), p.values.begin(), p.values.end());
        std::vector<double>().swap(p.values);
      },
      Pool{}, exec);

  PooledCurve curve;
  curve.A = pool.A;
  curve.B = pool.B;
  curve.N = static_cast<double>(samples);
  curve.c = static_cast<double>(is_l1 ? model.s : model.r) * curve.N;
  curve.v = std::move(pool.values);
  std::sort(curve.v.begin(), curve.v.end(), std::greater<double>());
  curve.p1.assign(curve.v.size() + 1, 0.0);
  curve.p2.assign(curve.v.size() + 1, 0.0);
  for (std::size_t i = 0; i < curve.v.size(); ++i) {
    curve.p1[i + 1] = curve.p1[i] + curve.v[i];
    curve.p2[i + 1] = curve.p2[i] + curve.v[i] * curve.v[i];
  }
  return curve;
}

}  // namespace

Moments recipe_objective(const SubdifferentialModel& model, double tau, std::int64_t samples,
                         const RngStream& rng, Exec exec) {
  using K = SubdifferentialModel::Kind;
  return chunked_reduce<Moments>(
      samples, kDefaultChunk,
      [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(c)).engine();
        Moments part;
        for (std::int64_t i = begin; i < end; ++i) {
          switch (model.kind) {
            case K::l1:
              part.add(l1_dist2(gaussian_vector(model.d, eng), model.s, tau));
              break;
            case K::s1:
              part.add(s1_dist2(s1_parts(gaussian_matrix(model.m, model.n, eng), model.r), model.r,
                                tau));
              break;
            case K::generic:
              part.add(model.oracle.dist2(gaussian_vector(model.oracle.dim, eng), tau));
              break;
          }
        }
        return part;
      },
      [](Moments& acc, const Moments& p) { acc.merge(p); }, Moments{}, exec);
}

RecipeCurve recipe_statdim(const SubdifferentialModel& model, std::int64_t samples,
                           const RngStream& rng, Exec exec) {
  if (samples < 2) throw DomainError("recipe_statdim: need at least two samples");
  const double d = static_cast<double>(model.ambient_dimension());
  const double lo = 1e-8;
  const double hi = 10.0 * std::sqrt(d);

  std::function<double(double)> F;
  PooledCurve pooled;
  if (model.kind == SubdifferentialModel::Kind::generic) {
    F = [&](double tau) { return recipe_objective(model, tau, samples, rng, exec).mean(); };
  } else {
    pooled = pooled_curve(model, samples, rng, exec);
    F = [&](double tau) { return pooled(tau); };
  }

  const Minimum best = minimize_unimodal(F, lo, hi, 40);
  RecipeCurve out;
  out.samples_per_tau = samples;
  if (best.x >= hi * (1.0 - 1e-6)) {
    out.vacuous = true;
    out.tau_star = hi;
    out.F_min = d;
    return out;
  }
  // the sample curve is convex, so the left end is the only other candidate
  const double f_lo = F(lo);
  out.tau_star = f_lo < best.value ? lo : best.x;
  out.F_min = std::min(f_lo, best.value);
  out.std_error = recipe_objective(model, out.tau_star, samples, rng, exec).stderr_of_mean();
  return out;
}

}  // namespace conelab
