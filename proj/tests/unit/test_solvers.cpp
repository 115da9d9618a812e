#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "conelab/solvers.hpp"

using namespace conelab;

namespace {

// min |x|_1 subject to Ax = b as the standard-form LP over (u, v) >= 0.
double l1_min_by_lp(const Matrix& A, const Vector& b) {
  const Index m = A.rows(), d = A.cols();
  Matrix S(m, 2 * d);
  S << A, -A;
  const LpResult r = solve_standard_lp(S, b, Vector::Ones(2 * d));
  REQUIRE(r.status == LpResult::Status::optimal);
  return r.objective;
}

// {x >= 0 : Ax = b} nonempty, by phase one of the simplex solver.
bool orthant_feasible_by_lp(const Matrix& A, const Vector& b) {
  return solve_standard_lp(A, b, Vector::Zero(A.cols())).status == LpResult::Status::optimal;
}

// Every top-k inequality of the sorted vector, checked directly.
double worst_majorization_excess(const Vector& x, double t, Vector y) {
  Vector xs = x;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  double sx = 0.0, sy = 0.0, worst = -1e300;
  for (Index k = 0; k < x.size(); ++k) {
    sx += xs[k];
    sy += y[k];
    worst = std::max(worst, sx - t * sy);
  }
  return worst;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("soft threshold and l1 ball projection") {
  const Vector v = (Vector(4) << 3.0, -0.5, 1.0, -2.0).finished();
  CHECK((soft_threshold(v, 1.0) - Vector((Vector(4) << 2.0, 0.0, 0.0, -1.0).finished())).norm() == 0.0);
  CHECK(soft_threshold(v, 10.0).norm() == 0.0);
  // |v|_1 = 6.5; radius 3 -> threshold 1 gives (2, 0, 0, -1)
  CHECK((project_l1_ball(v, 3.0) - Vector((Vector(4) << 2.0, 0.0, 0.0, -1.0).finished())).norm() < 1e-14);
  CHECK((project_l1_ball(v, 10.0) - v).norm() == 0.0);
  CHECK(project_l1_ball(v, 0.0).norm() == 0.0);
  // projection optimality against random feasible points
  Engine eng(3);
  for (int t = 0; t < 50; ++t) {
    const Vector x = gaussian_vector(8, eng) * 3.0;
    const Vector p = project_l1_ball(x, 2.0);
    CHECK(p.lpNorm<1>() <= 2.0 + 1e-12);
    for (int s = 0; s < 20; ++s) {
      const Vector q = project_l1_ball(gaussian_vector(8, eng), 2.0);
      CHECK((x - p).dot(q - p) <= 1e-10);
    }
  }
}

TEST_CASE("singular value thresholding") {
  Engine eng(5);
  const Matrix M = gaussian_matrix(4, 6, eng);
  const SvdResult s = svd(M);
  const Vector shrunk = (s.sigma.array() - 0.8).max(0.0).matrix();
  const Matrix expect = s.U * shrunk.asDiagonal() * s.V.transpose();
  const Vector got = singular_value_threshold(Eigen::Map<const Vector>(M.data(), M.size()), 4, 6, 0.8);
  CHECK((Eigen::Map<const Matrix>(got.data(), 4, 6) - expect).norm() < 1e-10);
}

TEST_CASE("simplex on a small known LP") {
  // min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6 -> x = (1.6, 1.2)
  Matrix A(2, 4);
  A << 1, 2, 1, 0, 3, 1, 0, 1;
  const Vector b = (Vector(2) << 4, 6).finished();
  const Vector c = (Vector(4) << -1, -1, 0, 0).finished();
  const LpResult r = solve_standard_lp(A, b, c);
  REQUIRE(r.status == LpResult::Status::optimal);
  CHECK(std::abs(r.objective + 2.8) < 1e-10);
  CHECK(std::abs(r.x[0] - 1.6) < 1e-10);
  CHECK(std::abs(r.x[1] - 1.2) < 1e-10);
  // dual feasibility and strong duality
  CHECK((A.transpose() * r.duals - c).maxCoeff() <= 1e-10);
  CHECK(std::abs(b.dot(r.duals) - r.objective) < 1e-10);
  // infeasible: x1 + x2 = -1
  Matrix A2(1, 2);
  A2 << 1, 1;
  CHECK(solve_standard_lp(A2, Vector::Constant(1, -1.0), Vector::Ones(2)).status == LpResult::Status::infeasible);
  // unbounded: min -x1 s.t. x1 - x2 = 0
  A2 << 1, -1;
  CHECK(solve_standard_lp(A2, Vector::Zero(1), (Vector(2) << -1, 0).finished()).status ==
        LpResult::Status::unbounded);
}

TEST_CASE("basis pursuit") {
  Engine eng(7);
  // m = d recovers anything
  ProblemInstance full = make_l1_instance(20, 15, 20, eng);
  CHECK(solve(full).success);
  // x0 = 0 gives z0 = 0 and the solution 0
  ProblemInstance zero = make_l1_instance(20, 0, 5, eng);
  CHECK(zero.z0.norm() == 0.0);
  CHECK(solve(zero).success);
  // the optimal value agrees with a linear program
  SolverParams patient;
  patient.max_iters = 100000;
  for (int t = 0; t < 10; ++t) {
    const ProblemInstance inst = make_l1_instance(30, 6, 15, eng);
    const SolveResult r = basis_pursuit_l1(inst.A, inst.z0, patient);
    REQUIRE(r.status == SolveStatus::converged);
    CHECK(std::abs(r.x.lpNorm<1>() - l1_min_by_lp(inst.A, inst.z0)) <= 1e-5 * (1.0 + r.x.lpNorm<1>()));
    CHECK((inst.A * r.x - inst.z0).norm() <= 1e-6 * (1.0 + inst.z0.norm()));
  }
  // very sparse with plenty of measurements succeeds, very dense with few fails
  CHECK(solve(make_l1_instance(40, 2, 30, eng)).success);
  CHECK(!solve(make_l1_instance(40, 30, 10, eng)).success);
}

TEST_CASE("nuclear norm recovery") {
  Engine eng(8);
  CHECK(solve(make_s1_instance(5, 2, 25, eng)).success);
  CHECK(solve(make_s1_instance(6, 0, 3, eng)).success);
  CHECK(solve(make_s1_instance(6, 1, 30, eng)).success);
  CHECK(!solve(make_s1_instance(6, 4, 8, eng)).success);
}

TEST_CASE("cone feasibility") {
  const Matrix I = Matrix::Identity(3, 3);
  const Vector pos = (Vector(3) << 1.0, 2.0, 0.5).finished();
  const Vector neg = (Vector(3) << 1.0, -2.0, 0.5).finished();
  CHECK(cone_feasibility(I, pos, ConeSpec::orthant(3)).status == SolveStatus::converged);
  CHECK(cone_feasibility(I, neg, ConeSpec::orthant(3)).status == SolveStatus::infeasible_certificate);
  CHECK_THROWS_AS(cone_feasibility(I, Vector::Zero(3), ConeSpec::orthant(3)), DomainError);
  CHECK_THROWS_AS(cone_feasibility(I, pos, ConeSpec::orthant(4)), DomainError);
  // against the simplex phase one
  Engine eng(10);
  int agree = 0, total = 0;
  for (Index m : {2, 4, 6, 8})
    for (int t = 0; t < 15; ++t) {
      const ProblemInstance inst = make_feasibility_instance(ConeSpec::orthant(12), m, eng);
      const SolveResult r = cone_feasibility(inst.A, inst.z0, ConeSpec::orthant(12));
      const bool lp = orthant_feasible_by_lp(inst.A, inst.z0);
      agree += (r.status == SolveStatus::converged) == lp;
      ++total;
    }
  CHECK(agree == total);
  // the feasible point is returned
  const ProblemInstance inst = make_feasibility_instance(ConeSpec::second_order(10), 2, eng);
  const SolveResult r = cone_feasibility(inst.A, inst.z0, ConeSpec::second_order(10));
  if (r.status == SolveStatus::converged) {
    CHECK((inst.A * r.x - inst.z0).norm() <= 1e-6 * inst.z0.norm() + 1e-12);
    CHECK(r.x.head(9).norm() <= r.x[9] + 1e-9);
  }
}

TEST_CASE("majorization cuts") {
  const Vector y = (Vector(3) << 3.0, 2.0, 1.0).finished();
  // (3, 2, 1) is a vertex of P(y): no cut at t = 1
  CHECK(majorization_violations((Vector(3) << 1.0, 3.0, 2.0).finished(), 1.0, y, 1e-12).empty());
  const auto cuts = majorization_violations((Vector(3) << 4.0, 1.0, 1.0).finished(), 1.0, y, 1e-12);
  REQUIRE(!cuts.empty());
  CHECK(cuts.front().k == 1);
  CHECK(cuts.front().members == std::vector<Index>{0});
  CHECK(std::abs(cuts.front().violation - 1.0) < 1e-15);
}

TEST_CASE("permutahedron gauge") {
  Engine eng(12);
  // m = d pins x to x0, a vertex of P(y0), so the gauge is one
  const ProblemInstance inst = make_perm_instance(6, 6, eng);
  const SolveResult r = solve(inst);
  CHECK(r.success);
  CHECK(std::abs(r.objective - 1.0) < 1e-8);
  // below d the returned point is feasible and no worse than the truth
  for (Index m : {3, 5}) {
    const ProblemInstance p = make_perm_instance(8, m, eng);
    const SolveResult s = permutahedron_gauge_min(p.y0, p.A, p.z0);
    REQUIRE(s.status == SolveStatus::converged);
    CHECK(s.objective <= 1.0 + 1e-8);
    CHECK((p.A * s.x - p.z0).norm() <= 1e-7 * (1.0 + p.z0.norm()));
    Vector sorted = p.y0;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    CHECK(majorization_violations(s.x, s.objective, sorted, 1e-7).empty());
  }
}

TEST_CASE("recession directions") {
  Engine eng(15);
  // u >= 0 has no descent direction in the orthant
  const Matrix A = gaussian_matrix(3, 8, eng);
  CHECK(cone_recession_direction(A, Vector::Ones(8), ConeSpec::orthant(8)).status ==
        SolveStatus::infeasible_certificate);
  // against an LP: min <u, x> over {x >= 0, Ax = 0, sum x = 1} is negative
  int agree = 0, total = 0, found = 0;
  for (Index m : {1, 3, 5, 7})
    for (int t = 0; t < 10; ++t) {
      const Matrix B = gaussian_matrix(m, 8, eng);
      const Vector u = gaussian_vector(8, eng);
      Matrix S(m + 1, 8);
      S << B, Vector::Ones(8).transpose();
      Vector rhs = Vector::Zero(m + 1);
      rhs[m] = 1.0;
      const LpResult lp = solve_standard_lp(S, rhs, u);
      const bool lp_says = lp.status == LpResult::Status::optimal && lp.objective < 0.0;
      const SolveResult r = cone_recession_direction(B, u, ConeSpec::orthant(8));
      const bool ours = r.status == SolveStatus::converged;
      agree += ours == lp_says;
      found += ours;
      ++total;
      if (ours) {
        CHECK(r.x.minCoeff() >= -1e-9);
        CHECK((B * r.x).norm() <= 1e-5);
        CHECK(u.dot(r.x) <= -1.0 + 1e-5);
      }
    }
  CHECK(agree == total);
  CHECK(found > 0);
  CHECK(found < total);
}

TEST_CASE("a unique feasible point is returned exactly") {
  Engine eng(19);
  const ProblemInstance l1 = make_l1_instance(16, 5, 16, eng);
  CHECK((basis_pursuit_l1(l1.A, l1.z0).x - l1.x0).norm() <= 1e-8 * (1.0 + l1.x0.norm()));
  const ProblemInstance s1 = make_s1_instance(4, 2, 16, eng);
  CHECK((nuclear_bp(s1.A, s1.z0, 4, 4).x - s1.x0).norm() <= 1e-8 * (1.0 + s1.x0.norm()));
  const ProblemInstance pg = make_perm_instance(7, 7, eng);
  CHECK((permutahedron_gauge_min(pg.y0, pg.A, pg.z0).x - pg.x0).norm() <= 1e-8 * pg.x0.norm());
}

TEST_CASE("scaling covariance") {
  Engine eng(16);
  SolverParams tight;
  tight.tol = 1e-12;
  tight.max_iters = 100000;
  for (int t = 0; t < 5; ++t) {
    const ProblemInstance inst = make_l1_instance(30, 4, 20, eng);
    const SolveResult a = basis_pursuit_l1(inst.A, inst.z0, tight);
    const SolveResult b = basis_pursuit_l1(inst.A, 7.5 * inst.z0, tight);
    CHECK((b.x - 7.5 * a.x).norm() <= 1e-8 * 7.5 * a.x.norm());
  }
}

TEST_CASE("separation oracle soundness") {
  Engine eng(17);
  for (Index m : {2, 4, 6}) {
    const ProblemInstance p = make_perm_instance(9, m, eng);
    const SolveResult s = permutahedron_gauge_min(p.y0, p.A, p.z0);
    REQUIRE(s.status == SolveStatus::converged);
    CHECK(worst_majorization_excess(s.x, s.objective, p.y0) <= 1e-9 * (1.0 + p.y0.lpNorm<1>()));
    // sum constraint: x is in t P(y0), so its total is t times that of y0
    CHECK(std::abs(s.x.sum() - s.objective * p.y0.sum()) <= 1e-8 * p.y0.lpNorm<1>());
  }
  // every cut reported is a genuinely violated top-k inequality
  const Vector y = (Vector(4) << 4.0, 3.0, 2.0, 1.0).finished();
  const Vector x = (Vector(4) << 6.0, 0.5, 3.5, 0.0).finished();
  for (const MajorizationCut& c : majorization_violations(x, 1.0, y, 1e-12)) {
    double lhs = 0.0;
    for (Index i : c.members) lhs += x[i];
    CHECK(std::abs(lhs - y.head(c.k).sum() - c.violation) < 1e-12);
    CHECK(c.violation > 0.0);
  }
}

TEST_CASE("demixing is never worse than the truth") {
  Engine eng(18);
  SolverParams tight;
  tight.max_iters = 100000;
  for (int t = 0; t < 6; ++t) {
    const ProblemInstance p = make_demix_l1l1_instance(24, 2 + t, 3, eng);
    const SolveResult r = demix_l1_l1(p.A, p.z0, p.bound, tight);
    REQUIRE(r.status == SolveStatus::converged);
    CHECK(p.x0.lpNorm<1>() >= r.objective - 1e-7 * (1.0 + p.x0.lpNorm<1>()));
  }
}

TEST_CASE("success check") {
  const Vector a = Vector::Ones(3);
  CHECK(success_check(a, a));
  CHECK(success_check(a, a + Vector::Constant(3, 5e-6)));
  CHECK(!success_check(a, a + Vector::Constant(3, 1e-5)));
  CHECK_THROWS_AS(success_check(a, Vector::Ones(4)), DomainError);
  const Matrix i2 = Matrix::Identity(2, 2), i3 = Matrix::Identity(3, 3);
  CHECK(success_check(i2, i2));
  CHECK_THROWS_AS(success_check(i2, i3), DomainError);
}

TEST_CASE("demixing") {
  Engine eng(14);
  // with no sparse component in x the truth has objective zero
  CHECK(solve(make_demix_l1l1_instance(30, 0, 3, eng)).success);
  CHECK(solve(make_demix_l1l1_instance(30, 2, 2, eng)).success);
  CHECK(!solve(make_demix_l1l1_instance(30, 20, 20, eng)).success);
  CHECK(solve(make_demix_s1l1_instance(5, 0, 3, eng)).success);
  CHECK(solve(make_demix_s1l1_instance(6, 1, 2, eng)).success);
  // the constraint is respected
  const ProblemInstance p = make_demix_l1l1_instance(20, 3, 3, eng);
  const SolveResult r = demix_l1_l1(p.A, p.z0, p.bound);
  CHECK(r.y.lpNorm<1>() <= p.bound * (1.0 + 1e-6));
  CHECK((r.x + p.A * r.y - p.z0).norm() <= 1e-6 * (1.0 + p.z0.norm()));
}

}
