#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>

#include "conelab/solvers.hpp"

namespace conelab {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr int kBlandAfter = 50;  // consecutive degenerate pivots before switching rules

struct Phase {
  const Matrix& M;            // m x (n + m): original columns then artificials
  const Vector& b;            // non-negative
  Vector cost;
  std::vector<Index>& basis;  // basic column per row
  Index n_orig;
  bool allow_artificial_entry;
};

LpResult::Status run_phase(Phase& ph, int& iterations, int max_iters) {
  const Index m = ph.M.rows();
  const Index ncols = ph.M.cols();
  std::vector<char> in_basis(static_cast<std::size_t>(ncols), 0);
  for (Index j : ph.basis) in_basis[static_cast<std::size_t>(j)] = 1;
  int degenerate = 0;
  bool bland = false;
  Matrix B(m, m);
  Vector cB(m);
  while (iterations < max_iters) {
    for (Index i = 0; i < m; ++i) {
      B.col(i) = ph.M.col(ph.basis[static_cast<std::size_t>(i)]);
      cB[i] = ph.cost[ph.basis[static_cast<std::size_t>(i)]];
    }
    const Eigen::PartialPivLU<Matrix> lu(B);
    const Vector xB = lu.solve(ph.b);
    const Vector pi = Eigen::PartialPivLU<Matrix>(B.transpose()).solve(cB);

    Index enter = -1;
    double best = -kCostTol;
    for (Index j = 0; j < ncols; ++j) {
      if (in_basis[static_cast<std::size_t>(j)]) continue;
      if (j >= ph.n_orig && !ph.allow_artificial_entry) continue;
      const double rc = ph.cost[j] - ph.M.col(j).dot(pi);
      if (rc < best) {
        enter = j;
        if (bland) break;
        best = rc;
      }
    }
    if (enter < 0) return LpResult::Status::optimal;

    const Vector dir = lu.solve(ph.M.col(enter));
    Index leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      const Index bi = ph.basis[static_cast<std::size_t>(i)];
      double r;
      if (bi >= ph.n_orig && !ph.allow_artificial_entry && std::abs(dir[i]) > kPivotTol) {
        r = 0.0;  // drive a zero-level artificial out of the basis
      } else if (dir[i] > kPivotTol) {
        r = std::max(0.0, xB[i]) / dir[i];
      } else {
        continue;
      }
      if (r < ratio ||
          (r == ratio && leave >= 0 && bi < ph.basis[static_cast<std::size_t>(leave)])) {
        ratio = r;
        leave = i;
      }
    }
    if (leave < 0) return LpResult::Status::unbounded;

    degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
    bland = degenerate > kBlandAfter;
    in_basis[static_cast<std::size_t>(ph.basis[static_cast<std::size_t>(leave)])] = 0;
    in_basis[static_cast<std::size_t>(enter)] = 1;
    ph.basis[static_cast<std::size_t>(leave)] = enter;
    ++iterations;
  }
  return LpResult::Status::iteration_limit;
}

}  // namespace

LpResult solve_standard_lp(const Matrix& A, const Vector& b, const Vector& c, int max_iters) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n) throw DomainError("solve_standard_lp: size mismatch");
  LpResult out;

  Vector sign = Vector::Ones(m);
  for (Index i = 0; i < m; ++i)
    if (b[i] < 0.0) sign[i] = -1.0;
  Matrix M(m, n + m);
  M.leftCols(n) = sign.asDiagonal() * A;
  M.rightCols(m).setIdentity();
  const Vector bb = sign.cwiseProduct(b);

  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  Vector cost1 = Vector::Zero(n + m);
  cost1.tail(m).setOnes();
  Phase p1{M, bb, cost1, basis, n, true};
  out.status = run_phase(p1, out.iterations, max_iters);
  if (out.status == LpResult::Status::iteration_limit) return out;

  auto basic_solution = [&]() {
    Matrix B(m, m);
    for (Index i = 0; i < m; ++i) B.col(i) = M.col(basis[static_cast<std::size_t>(i)]);
    const Vector xB = Eigen::PartialPivLU<Matrix>(B).solve(bb);
    Vector x = Vector::Zero(n + m);
    for (Index i = 0; i < m; ++i) x[basis[static_cast<std::size_t>(i)]] = xB[i];
    return x;
  };
  const double infeas = basic_solution().tail(m).sum();
  if (infeas > 1e-9 * (1.0 + bb.norm())) {
    out.status = LpResult::Status::infeasible;
    return out;
  }

  Vector cost2 = Vector::Zero(n + m);
  cost2.head(n) = c;
  Phase p2{M, bb, cost2, basis, n, false};
  out.status = run_phase(p2, out.iterations, max_iters);
  if (out.status != LpResult::Status::optimal) return out;

  const Vector full = basic_solution();
  out.x = full.head(n).cwiseMax(0.0);
  Matrix B(m, m);
  Vector cB(m);
  for (Index i = 0; i < m; ++i) {
    B.col(i) = M.col(basis[static_cast<std::size_t>(i)]);
    cB[i] = cost2[basis[static_cast<std::size_t>(i)]];
  }
  const Vector pi = Eigen::PartialPivLU<Matrix>(B.transpose()).solve(cB);
  out.duals = sign.cwiseProduct(pi);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace conelab
