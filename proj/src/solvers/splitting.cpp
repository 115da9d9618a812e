#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "conelab/solvers.hpp"

namespace conelab {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iters:
      return "max_iters";
    case SolveStatus::infeasible_certificate:
      return "infeasible_certificate";
  }
  return "unknown";
}

Vector soft_threshold(const Vector& v, double t) {
  return v.unaryExpr([t](double a) { return a > t ? a - t : (a < -t ? a + t : 0.0); });
}

Vector project_l1_ball(const Vector& v, double radius) {
  if (!(radius >= 0.0)) throw DomainError("project_l1_ball: radius must be non-negative");
  if (v.lpNorm<1>() <= radius) return v;
  if (radius == 0.0) return Vector::Zero(v.size());
  std::vector<double> mag(v.data(), v.data() + v.size());
  for (double& a : mag) a = std::abs(a);
  std::sort(mag.begin(), mag.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < mag.size(); ++j) {
    cum += mag[j];
    const double cand = (cum - radius) / static_cast<double>(j + 1);
    if (mag[j] - cand > 0.0) theta = cand;
  }
  return soft_threshold(v, theta);
}

Vector singular_value_threshold(const Vector& v, Index rows, Index cols, double t) {
  if (v.size() != rows * cols) throw DomainError("singular_value_threshold: size mismatch");
  const SvdResult s = svd(Eigen::Map<const Matrix>(v.data(), rows, cols));
  const Vector shrunk = (s.sigma.array() - t).cwiseMax(0.0);
  Matrix X = s.U * shrunk.asDiagonal() * s.V.transpose();
  return Eigen::Map<const Vector>(X.data(), X.size());
}

namespace {

using Prox = std::function<Vector(const Vector&, double)>;

// Penalty changes stop after this many iterations; rebalancing forever can
// cycle and stall the residuals well above tolerance.
constexpr int kBalanceIters = 1000;

// Scaled-form ADMM for min f(z) subject to z = x, x in {x : Ax = z0}, with
// the affine projection x = P v + q precomputed.
SolveResult admm_affine(const Matrix& A, const Vector& z0, const Prox& prox,
                        const SolverParams& p) {
  const Index m = A.rows();
  const Index d = A.cols();
  if (z0.size() != m) throw DomainError("solver: observation length does not match operator");
  SolveResult res;
  if (m == 0) {
    res.x = Vector::Zero(d);
    res.status = SolveStatus::converged;
    return res;
  }
  Eigen::LLT<Matrix> llt(A * A.transpose());
  if (llt.info() != Eigen::Success)
    throw NumericalError("solver: measurement operator is rank deficient");
  const Matrix K = llt.solve(A);  // (A A^T)^{-1} A
  const Matrix P = Matrix::Identity(d, d) - A.transpose() * K;
  const Vector q = K.transpose() * z0;

  double rho = p.penalty;
  Vector x = q, z = q, u = Vector::Zero(d);
  for (int it = 1; it <= p.max_iters; ++it) {
    x.noalias() = P * (z - u);
    x += q;
    const Vector z_old = z;
    z = prox(x + u, 1.0 / rho);
    u += x - z;

    const double r = (x - z).norm();
    const double s = rho * (z - z_old).norm();
    const double eps_pri = p.tol * std::max(x.norm(), z.norm()) + 1e-14;
    const double eps_dual = p.tol * rho * u.norm() + 1e-14;
    res.iterations = it;
    res.primal_residual = r;
    res.dual_residual = s;
    if (r <= eps_pri && s <= eps_dual) {
      res.status = SolveStatus::converged;
      break;
    }
    if (it % 10 == 0 && it <= kBalanceIters) {
      if (r > p.balance_ratio * s) {
        rho *= 2.0;
        u /= 2.0;
      } else if (s > p.balance_ratio * r) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }
  res.x = x;
  return res;
}

// Scaled-form ADMM for min f(x) + indicator{|y|_1 <= bound} subject to
// x + U y = z0 with U orthogonal.
SolveResult admm_demix(const Matrix& U, const Vector& z0, double bound, const Prox& prox,
                       const SolverParams& p) {
  const Index d = U.rows();
  if (U.cols() != d || z0.size() != d) throw DomainError("demix: dimension mismatch");
  if (!(bound >= 0.0)) throw DomainError("demix: bound must be non-negative");
  SolveResult res;
  double rho = p.penalty;
  Vector x = z0, y = Vector::Zero(d), u = Vector::Zero(d), Uy = Vector::Zero(d);
  for (int it = 1; it <= p.max_iters; ++it) {
    x = prox(z0 - Uy - u, 1.0 / rho);
    const Vector y_old = y;
    y = project_l1_ball(U.transpose() * (z0 - x - u), bound);
    Uy.noalias() = U * y;
    const Vector gap = x + Uy - z0;
    u += gap;

    const double r = gap.norm();
    const double s = rho * (y - y_old).norm();
    const double eps_pri = p.tol * std::max({x.norm(), Uy.norm(), z0.norm()}) + 1e-14;
    const double eps_dual = p.tol * rho * u.norm() + 1e-14;
    res.iterations = it;
    res.primal_residual = r;
    res.dual_residual = s;
    if (r <= eps_pri && s <= eps_dual) {
      res.status = SolveStatus::converged;
      break;
    }
    if (it % 10 == 0 && it <= kBalanceIters) {
      if (r > p.balance_ratio * s) {
        rho *= 2.0;
        u /= 2.0;
      } else if (s > p.balance_ratio * r) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }
  res.y = y;
  res.x = z0 - U * y;
  return res;
}

}  // namespace

SolveResult basis_pursuit_l1(const Matrix& A, const Vector& z0, const SolverParams& p) {
  SolveResult r = admm_affine(A, z0, soft_threshold, p);
  r.objective = r.x.lpNorm<1>();
  return r;
}

SolveResult nuclear_bp(const Matrix& A, const Vector& z0, Index rows, Index cols,
                       const SolverParams& p) {
  if (A.cols() != rows * cols) throw DomainError("nuclear_bp: operator width is not rows*cols");
  SolveResult r = admm_affine(
      A, z0, [rows, cols](const Vector& v, double t) { return singular_value_threshold(v, rows, cols, t); },
      p);
  r.objective = singular_values(Eigen::Map<const Matrix>(r.x.data(), rows, cols)).sum();
  return r;
}

SolveResult demix_l1_l1(const Matrix& U, const Vector& z0, double bound, const SolverParams& p) {
  SolveResult r = admm_demix(U, z0, bound, soft_threshold, p);
  r.objective = r.x.lpNorm<1>();
  return r;
}

SolveResult demix_s1_l1(const Matrix& U, const Vector& z0, double bound, Index rows, Index cols,
                        const SolverParams& p) {
  if (U.rows() != rows * cols) throw DomainError("demix_s1_l1: operator size is not rows*cols");
  SolveResult r = admm_demix(
      U, z0, bound,
      [rows, cols](const Vector& v, double t) { return singular_value_threshold(v, rows, cols, t); },
      p);
  r.objective = singular_values(Eigen::Map<const Matrix>(r.x.data(), rows, cols)).sum();
  return r;
}

bool success_check(const Vector& candidate, const Vector& truth, double tol) {
  if (candidate.size() != truth.size()) throw DomainError("success_check: shape mismatch");
  return (candidate - truth).norm() <= tol;
}

bool success_check(const Matrix& candidate, const Matrix& truth, double tol) {
  if (candidate.rows() != truth.rows() || candidate.cols() != truth.cols())
    throw DomainError("success_check: shape mismatch");
  return (candidate - truth).norm() <= tol;
}

}  // namespace conelab
