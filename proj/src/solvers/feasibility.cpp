#include <cmath>
#include <deque>

#include "conelab/solvers.hpp"

namespace conelab {

SolveResult cone_feasibility(const Matrix& A, const Vector& b, const ConeSpec& cone,
                             const FeasibilityParams& p) {
  const Index d = A.cols();
  if (A.rows() != b.size()) throw DomainError("cone_feasibility: A and b disagree in length");
  if (cone.ambient_dimension() != d) throw DomainError("cone_feasibility: cone dimension mismatch");
  const double bnorm = b.norm();
  if (bnorm == 0.0) throw DomainError("cone_feasibility: b must be nonzero");

  const double anorm = spectral_norm_estimate(A);
  const double L = 1.01 * anorm * anorm;  // power iteration approaches from below
  SolveResult res;
  res.x = Vector::Zero(d);
  if (L == 0.0) {
    res.status = SolveStatus::infeasible_certificate;
    res.primal_residual = bnorm;
    return res;
  }

  Vector x = Vector::Zero(d), y = x, x_new(d), step(d);
  double t = 1.0;
  double prev = bnorm;
  double best = bnorm;
  std::deque<double> best_hist;  // best residual at each of the last window steps
  for (int it = 1; it <= p.max_iters; ++it) {
    step = y - A.transpose() * (A * y - b) / L;
    project_into(cone, step, x_new);
    const Vector r = b - A * x_new;
    const double res_norm = r.norm();
    res.iterations = it;
    res.primal_residual = res_norm;
    if (res_norm <= p.tol * bnorm) {
      res.x = x_new;
      res.status = SolveStatus::converged;
      return res;
    }

    if (res_norm > prev) {  // adaptive restart on a non-monotone step
      t = 1.0;
      y = x_new;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = x_new + ((t - 1.0) / t_next) * (x_new - x);
      t = t_next;
    }
    x = x_new;
    prev = res_norm;

    if (it % 50 == 0) {
      // Farkas: A'r in the polar cone and <b, r> > 0 rule out any feasible x
      const Vector w = A.transpose() * r;
      Vector pw(d);
      project_into(cone, w, pw);
      res.dual_residual = pw.norm();
      if (b.dot(r) > 0.0 && pw.norm() <= p.certificate_tol * anorm * res_norm) {
        res.x = x;
        res.status = SolveStatus::infeasible_certificate;
        return res;
      }
    }

    best = std::min(best, res_norm);
    best_hist.push_back(best);
    if (static_cast<int>(best_hist.size()) > p.stall_window) {
      const double then = best_hist.front();
      best_hist.pop_front();
      if (then - best <= p.stall_rel * then) {
        res.x = x;
        res.status = SolveStatus::infeasible_certificate;
        return res;
      }
    }
  }
  res.x = x;
  res.status = SolveStatus::max_iters;
  return res;
}

SolveResult cone_recession_direction(const Matrix& A, const Vector& u, const ConeSpec& cone,
                                     const FeasibilityParams& p) {
  const Index m = A.rows(), d = A.cols();
  if (u.size() != d) throw DomainError("cone_recession_direction: u and A disagree in length");
  if (cone.ambient_dimension() != d)
    throw DomainError("cone_recession_direction: cone dimension mismatch");
  // slack s >= 0 turns <u, x> <= -1 into <u, x> + s = -1
  Matrix B = Matrix::Zero(m + 1, d + 1);
  B.topLeftCorner(m, d) = A;
  B.bottomLeftCorner(1, d) = u.transpose();
  B(m, d) = 1.0;
  Vector b = Vector::Zero(m + 1);
  b[m] = -1.0;
  SolveResult r = cone_feasibility(B, b, ConeSpec::product({cone, ConeSpec::orthant(1)}), p);
  r.y = r.x.tail(1);
  r.x = Vector(r.x.head(d));
  return r;
}

}  // namespace conelab
