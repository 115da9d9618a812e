#pragma once

#include <memory>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/linalg.hpp"
#include "conelab/rng.hpp"

namespace conelab {

struct SolverParams {
  double tol = 1e-8;         // relative primal/dual residual tolerance
  int max_iters = 10000;
  double penalty = 1.0;      // initial ADMM penalty, rebalanced by factors of 2
  double balance_ratio = 10.0;
};

struct FeasibilityParams {
  double tol = 1e-6;          // feasible when |Ax - b| <= tol |b|
  int max_iters = 20000;
  int stall_window = 500;     // infeasible when the residual decreased by
  double stall_rel = 1e-10;   // less than stall_rel over stall_window steps
  double certificate_tol = 1e-8;
};

struct LpParams {
  double violation_tol = 1e-9;
  int max_rounds = 200;
};

enum class SolveStatus { converged, max_iters, infeasible_certificate };

std::string to_string(SolveStatus s);

struct SolveResult {
  Vector x;  // primary solution (vectorized for matrix problems)
  Vector y;  // second component for demixing; t for the permutahedron gauge
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  SolveStatus status = SolveStatus::max_iters;
  bool success = false;  // set by solve(); requires status == converged
};

/// Soft thresholding and l1-ball projection (sort-based water filling).
Vector soft_threshold(const Vector& v, double t);
Vector project_l1_ball(const Vector& v, double radius);

/// Singular-value soft thresholding of the rows x cols matrix stored
/// column-major in v.
Vector singular_value_threshold(const Vector& v, Index rows, Index cols, double t);

/// min |x|_1 subject to Ax = z0, by ADMM between soft thresholding and the
/// affine projection. The returned x is the affine iterate. Throws
/// NumericalError if A A^T is not positive definite.
SolveResult basis_pursuit_l1(const Matrix& A, const Vector& z0, const SolverParams& p = {});

/// min |X|_S1 subject to A vec(X) = z0 for a rows x cols X.
SolveResult nuclear_bp(const Matrix& A, const Vector& z0, Index rows, Index cols,
                       const SolverParams& p = {});

/// min |z0 - U y|_1 subject to |y|_1 <= bound. Returns x = z0 - U y and y.
SolveResult demix_l1_l1(const Matrix& U, const Vector& z0, double bound,
                        const SolverParams& p = {});

/// min |Z0 - U(Y)|_S1 subject to |Y|_1 <= bound; U acts on column-major
/// vectorizations of rows x cols matrices.
SolveResult demix_s1_l1(const Matrix& U, const Vector& z0, double bound, Index rows, Index cols,
                        const SolverParams& p = {});

/// Decides whether {x in C : Ax = b} is nonempty by minimizing |Ax - b|^2 / 2
/// over C with restarted accelerated projected gradient. Status converged
/// means feasible; infeasible_certificate means a Farkas-type certificate or
/// a stalled residual above the threshold.
SolveResult cone_feasibility(const Matrix& A, const Vector& b, const ConeSpec& cone,
                             const FeasibilityParams& p = {});

/// Looks for x in C with Ax = 0 and <u, x> <= -1, a direction along which
/// min <u, x> over {x in C : Ax = b} decreases without bound whenever that
/// set is nonempty. Solved as cone_feasibility over C x R_+ with a slack for
/// the inequality; x is the direction and y holds the slack.
SolveResult cone_recession_direction(const Matrix& A, const Vector& u, const ConeSpec& cone,
                                     const FeasibilityParams& p = {});

/// min t subject to Ax = z0 and x in t P(y0), where P(y0) is the permutahedron
/// of y0. Majorization cuts are generated lazily; y holds (t).
SolveResult permutahedron_gauge_min(const Vector& y0, const Matrix& A, const Vector& z0,
                                    const LpParams& p = {});

/// Most violated majorization inequalities sum_{i in S} x_i <= t c_|S| for the
/// sorted top-k sets, at most one per k, ordered by violation. Each entry is
/// (k, indices of the top k).
struct MajorizationCut {
  Index k = 0;
  std::vector<Index> members;
  double violation = 0.0;
};
std::vector<MajorizationCut> majorization_violations(const Vector& x, double t,
                                                     const Vector& y0_sorted_desc, double tol);

/// |candidate - truth| <= tol (Frobenius norm for vectorized matrices).
/// Throws DomainError on a shape mismatch.
bool success_check(const Vector& candidate, const Vector& truth, double tol = 1e-5);
bool success_check(const Matrix& candidate, const Matrix& truth, double tol = 1e-5);

/// Standard-form LP min c'x subject to Ax = b, x >= 0 by revised simplex
/// (two phases, Dantzig pricing with Bland's rule after degenerate stalls).
struct LpResult {
  enum class Status { optimal, infeasible, unbounded, iteration_limit };
  Status status = Status::optimal;
  Vector x;
  Vector duals;  // multipliers pi with A' pi <= c at optimality
  double objective = 0.0;
  int iterations = 0;
};
LpResult solve_standard_lp(const Matrix& A, const Vector& b, const Vector& c,
                           int max_iters = 50000);

/// A random program with its planted truth.
struct ProblemInstance {
  enum class Kind { l1_bp, nuclear_bp, demix_l1l1, demix_s1l1, cone_feasibility, perm_gauge };
  Kind kind = Kind::l1_bp;
  Matrix A;        // measurement matrix, or the orthogonal U for demixing
  Vector z0;       // observation (b for feasibility)
  Vector x0;       // truth (vectorized for matrices)
  Vector y0;       // demixing second component, or the list for perm_gauge
  double bound = 0.0;
  Index rows = 0, cols = 0;
  std::shared_ptr<const ConeSpec> cone;
};

/// s-sparse x0 with random +-1 entries, Gaussian m x d A.
ProblemInstance make_l1_instance(Index d, Index s, Index m, Engine& eng);
/// X0 = Q1 Q2' with Stiefel factors (rank r), Gaussian m x n^2 operator.
ProblemInstance make_s1_instance(Index n, Index r, Index m, Engine& eng);
/// x0 sparse (sx), y0 sparse (sy), Haar U, z0 = x0 + U y0.
ProblemInstance make_demix_l1l1_instance(Index d, Index sx, Index sy, Engine& eng);
/// X0 rank r (n x n), Y0 sparse (sy of n^2), Haar U on n^2.
ProblemInstance make_demix_s1l1_instance(Index n, Index r, Index sy, Engine& eng);
/// Gaussian A (m x d) and an independent Gaussian b.
ProblemInstance make_feasibility_instance(const ConeSpec& cone, Index m, Engine& eng);
/// x0 = (1, ..., d), y0 = its entries in decreasing order, Gaussian A.
ProblemInstance make_perm_instance(Index d, Index m, Engine& eng);

/// Runs the matching solver and applies the 1e-5 recovery test (for
/// feasibility, success means feasible). SolveResult::success is set.
SolveResult solve(const ProblemInstance& inst, const SolverParams& sp = {},
                  const FeasibilityParams& fp = {}, const LpParams& lp = {});

}  // namespace conelab
