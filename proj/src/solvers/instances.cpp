#include <numeric>

#include "conelab/solvers.hpp"

namespace conelab {

namespace {

Vector sparse_signs(Index d, Index s, Engine& eng) {
  Vector x = Vector::Zero(d);
  std::bernoulli_distribution coin(0.5);
  for (Index i : random_subset(d, s, eng)) x[i] = coin(eng) ? 1.0 : -1.0;
  return x;
}

Vector low_rank(Index n, Index r, Engine& eng) {
  if (r == 0) return Vector::Zero(n * n);
  const Matrix Q1 = random_stiefel(n, r, eng);
  const Matrix Q2 = random_stiefel(n, r, eng);
  const Matrix X = Q1 * Q2.transpose();
  return Eigen::Map<const Vector>(X.data(), X.size());
}

}  // namespace

ProblemInstance make_l1_instance(Index d, Index s, Index m, Engine& eng) {
  if (s < 0 || s > d || m < 0 || m > d) throw DomainError("l1 instance: need 0 <= s, m <= d");
  ProblemInstance p;
  p.kind = ProblemInstance::Kind::l1_bp;
  p.x0 = sparse_signs(d, s, eng);
  p.A = gaussian_matrix(m, d, eng);
  p.z0 = p.A * p.x0;
  return p;
}

ProblemInstance make_s1_instance(Index n, Index r, Index m, Engine& eng) {
  if (r < 0 || r > n || m < 0 || m > n * n) throw DomainError("s1 instance: bad rank or count");
  ProblemInstance p;
  p.kind = ProblemInstance::Kind::nuclear_bp;
  p.rows = p.cols = n;
  p.x0 = low_rank(n, r, eng);
  p.A = gaussian_matrix(m, n * n, eng);
  p.z0 = p.A * p.x0;
  return p;
}

ProblemInstance make_demix_l1l1_instance(Index d, Index sx, Index sy, Engine& eng) {
  if (sx < 0 || sx > d || sy < 0 || sy > d) throw DomainError("demix instance: bad sparsity");
  ProblemInstance p;
  p.kind = ProblemInstance::Kind::demix_l1l1;
  p.x0 = sparse_signs(d, sx, eng);
  p.y0 = sparse_signs(d, sy, eng);
  p.A = random_orthogonal(d, eng);
  p.z0 = p.x0 + p.A * p.y0;
  p.bound = p.y0.lpNorm<1>();
  return p;
}

ProblemInstance make_demix_s1l1_instance(Index n, Index r, Index sy, Engine& eng) {
  if (r < 0 || r > n || sy < 0 || sy > n * n) throw DomainError("demix instance: bad rank or sparsity");
  ProblemInstance p;
  p.kind = ProblemInstance::Kind::demix_s1l1;
  p.rows = p.cols = n;
  p.x0 = low_rank(n, r, eng);
  p.y0 = sparse_signs(n * n, sy, eng);
  p.A = random_orthogonal(n * n, eng);
  p.z0 = p.x0 + p.A * p.y0;
  p.bound = p.y0.lpNorm<1>();
  return p;
}

ProblemInstance make_feasibility_instance(const ConeSpec& cone, Index m, Engine& eng) {
  if (m < 1) throw DomainError("feasibility instance: need at least one constraint");
  ProblemInstance p;
  p.kind = ProblemInstance::Kind::cone_feasibility;
  p.cone = std::make_shared<const ConeSpec>(cone);
  p.A = gaussian_matrix(m, cone.ambient_dimension(), eng);
  p.z0 = gaussian_vector(m, eng);
  return p;
}

ProblemInstance make_perm_instance(Index d, Index m, Engine& eng) {
  if (m < 0 || m > d) throw DomainError("permutahedron instance: need 0 <= m <= d");
  ProblemInstance p;
  p.kind = ProblemInstance::Kind::perm_gauge;
  p.x0 = Vector::LinSpaced(d, 1.0, static_cast<double>(d));
  p.y0 = p.x0.reverse();
  p.A = gaussian_matrix(m, d, eng);
  p.z0 = p.A * p.x0;
  return p;
}

SolveResult solve(const ProblemInstance& inst, const SolverParams& sp, const FeasibilityParams& fp,
                  const LpParams& lp) {
  using K = ProblemInstance::Kind;
  SolveResult r;
  bool recovered = false;
  switch (inst.kind) {
    case K::l1_bp:
      r = basis_pursuit_l1(inst.A, inst.z0, sp);
      recovered = success_check(r.x, inst.x0);
      break;
    case K::nuclear_bp:
      r = nuclear_bp(inst.A, inst.z0, inst.rows, inst.cols, sp);
      recovered = success_check(r.x, inst.x0);
      break;
    case K::demix_l1l1:
      r = demix_l1_l1(inst.A, inst.z0, inst.bound, sp);
      recovered = success_check(r.x, inst.x0) && success_check(r.y, inst.y0);
      break;
    case K::demix_s1l1:
      r = demix_s1_l1(inst.A, inst.z0, inst.bound, inst.rows, inst.cols, sp);
      recovered = success_check(r.x, inst.x0) && success_check(r.y, inst.y0);
      break;
    case K::cone_feasibility:
      r = cone_feasibility(inst.A, inst.z0, *inst.cone, fp);
      recovered = true;
      break;
    case K::perm_gauge:
      r = permutahedron_gauge_min(inst.y0, inst.A, inst.z0, lp);
      recovered = success_check(r.x, inst.x0);
      break;
  }
  r.success = r.status == SolveStatus::converged && recovered;
  return r;
}

}  // namespace conelab
