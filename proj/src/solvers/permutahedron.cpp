#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "conelab/solvers.hpp"

namespace conelab {

std::vector<MajorizationCut> majorization_violations(const Vector& x, double t,
                                                     const Vector& y0_sorted_desc, double tol) {
  const Index d = x.size();
  if (y0_sorted_desc.size() != d) throw DomainError("majorization_violations: length mismatch");
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] > x[b]; });
  std::vector<MajorizationCut> cuts;
  double sx = 0.0, sy = 0.0;
  for (Index k = 1; k < d; ++k) {
    sx += x[order[static_cast<std::size_t>(k - 1)]];
    sy += y0_sorted_desc[k - 1];
    const double viol = sx - t * sy;
    if (viol > tol) {
      MajorizationCut c;
      c.k = k;
      c.members.assign(order.begin(), order.begin() + k);
      std::sort(c.members.begin(), c.members.end());
      c.violation = viol;
      cuts.push_back(std::move(c));
    }
  }
  std::stable_sort(cuts.begin(), cuts.end(),
                   [](const MajorizationCut& a, const MajorizationCut& b) {
                     return a.violation > b.violation;
                   });
  return cuts;
}

SolveResult permutahedron_gauge_min(const Vector& y0, const Matrix& A, const Vector& z0,
                                    const LpParams& p) {
  const Index d = y0.size();
  const Index m = A.rows();
  if (A.cols() != d || z0.size() != m) throw DomainError("permutahedron_gauge_min: size mismatch");
  if (m > d) throw DomainError("permutahedron_gauge_min: more measurements than unknowns");
  Vector ys = y0;
  std::sort(ys.data(), ys.data() + d, std::greater<double>());
  for (Index i = 1; i < d; ++i)
    if (ys[i] == ys[i - 1]) throw DomainError("permutahedron_gauge_min: list entries must be distinct");
  const double total = ys.sum();
  if (total == 0.0) throw DomainError("permutahedron_gauge_min: list must not sum to zero");
  Vector topk(d + 1);  // topk[k] = sum of the k largest list entries
  topk[0] = 0.0;
  for (Index k = 1; k <= d; ++k) topk[k] = topk[k - 1] + ys[k - 1];

  // x = xp + N w over the solution set of A x = z0
  Vector xp = Vector::Zero(d);
  if (m > 0) {
    Eigen::LLT<Matrix> llt(A * A.transpose());
    if (llt.info() != Eigen::Success)
      throw NumericalError("permutahedron_gauge_min: measurement matrix is rank deficient");
    xp = A.transpose() * llt.solve(z0);
  }
  const Matrix N = null_space_basis(A);
  const Index nw = N.cols();
  SolveResult res;
  if (nw == 0) {
    // x is pinned; the sum constraint fixes t and the cuts only need checking
    const double t = xp.sum() / total;
    const auto cuts = majorization_violations(xp, t, ys, p.violation_tol * (1.0 + xp.lpNorm<1>()));
    res.x = xp;
    res.y = Vector::Constant(1, t);
    res.objective = t;
    res.iterations = 1;
    res.primal_residual = cuts.empty() ? 0.0 : cuts.front().violation;
    res.status = cuts.empty() ? SolveStatus::converged : SolveStatus::infeasible_certificate;
    return res;
  }
  const Index nv = nw + 1;  // variables (w, t)

  // cut for subset S of size k: 1_S'(xp + N w) - t c_k <= 0
  std::vector<Vector> G_rows;
  std::vector<double> h;
  std::set<std::vector<Index>> seen;
  auto add_cut = [&](std::vector<Index> members) {
    if (!seen.insert(members).second) return false;
    Vector g = Vector::Zero(nv);
    double hx = 0.0;
    for (Index i : members) {
      g.head(nw) += N.row(i).transpose();
      hx += xp[i];
    }
    g[nw] = -topk[static_cast<Index>(members.size())];
    G_rows.push_back(std::move(g));
    h.push_back(-hx);
    return true;
  };
  // initial box t min(y) <= x_i <= t max(y) keeps the relaxation bounded
  for (Index i = 0; i < d; ++i) add_cut({i});
  if (d > 1)
    for (Index i = 0; i < d; ++i) {
      std::vector<Index> rest;
      for (Index j = 0; j < d; ++j)
        if (j != i) rest.push_back(j);
      add_cut(std::move(rest));
    }

  Vector e(nv);
  e.head(nw) = N.colwise().sum().transpose();
  e[nw] = -total;
  const double f = -xp.sum();
  Vector c = Vector::Zero(nv);
  c[nw] = 1.0;

  for (int round = 1; round <= p.max_rounds; ++round) {
    // dual in standard form over (lambda, mu+, mu-) >= 0:
    // min h'lambda + f (mu+ - mu-)  s.t.  G'lambda + e (mu+ - mu-) = -c
    const Index ncut = static_cast<Index>(G_rows.size());
    Matrix D(nv, ncut + 2);
    Vector cost(ncut + 2);
    for (Index j = 0; j < ncut; ++j) {
      D.col(j) = G_rows[static_cast<std::size_t>(j)];
      cost[j] = h[static_cast<std::size_t>(j)];
    }
    D.col(ncut) = e;
    D.col(ncut + 1) = -e;
    cost[ncut] = f;
    cost[ncut + 1] = -f;
    const LpResult lp = solve_standard_lp(D, -c, cost);
    res.iterations = round;
    if (lp.status == LpResult::Status::iteration_limit) break;
    if (lp.status != LpResult::Status::optimal)
      throw NumericalError("permutahedron_gauge_min: cut LP ended with status " +
                           std::to_string(static_cast<int>(lp.status)));

    // the multipliers of the dual are an optimal primal point (w, t)
    const Vector v = lp.duals;
    const double t = v[nw];
    const Vector x = xp + N * v.head(nw);
    const auto cuts = majorization_violations(x, t, ys, p.violation_tol);
    res.x = x;
    res.y = Vector::Constant(1, t);
    res.objective = t;
    res.primal_residual = cuts.empty() ? 0.0 : cuts.front().violation;
    res.dual_residual = std::abs(x.sum() - t * total);
    if (cuts.empty()) {
      res.status = SolveStatus::converged;
      return res;
    }
    int added = 0;
    for (const auto& cut : cuts) {
      if (added >= d) break;
      if (add_cut(cut.members)) ++added;
    }
    if (added == 0) break;  // only already-present cuts are violated: numerical floor
  }
  res.status = SolveStatus::max_iters;
  return res;
}

}  // namespace conelab
