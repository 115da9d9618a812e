#include <cmath>
#include <numbers>

#include <doctest.h>

#include "conelab/cone.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

namespace {

std::vector<ConeSpec> sample_cones() {
  Engine eng(11);
  return {ConeSpec::orthant(7),
          ConeSpec::second_order(6),
          ConeSpec::circular(5, 0.3),
          ConeSpec::circular(5, 1.2),
          ConeSpec::circular(4, 0.0),
          ConeSpec::circular(4, std::numbers::pi / 2),
          ConeSpec::psd(4),
          ConeSpec::subspace(gaussian_matrix(6, 2, eng)),
          ConeSpec::product({ConeSpec::orthant(2), ConeSpec::second_order(3)}),
          ConeSpec::polar_of(ConeSpec::circular(5, 0.4)),
          ConeSpec::polar_of(ConeSpec::psd(3))};
}

// membership up to tol, written independently of the projection code
bool member(const ConeSpec& c, const Vector& x, double tol) {
  switch (c.kind()) {
    case ConeSpec::Kind::orthant:
      return x.minCoeff() >= -tol;
    case ConeSpec::Kind::second_order:
      return x.head(x.size() - 1).norm() <= x[x.size() - 1] + tol;
    case ConeSpec::Kind::circular:
      return x[0] >= x.norm() * std::cos(c.angle()) - tol;
    case ConeSpec::Kind::psd: {
      Eigen::SelfAdjointEigenSolver<Matrix> es(smat(x, c.order()));
      return es.eigenvalues().minCoeff() >= -tol;
    }
    case ConeSpec::Kind::subspace:
      return (x - c.basis() * (c.basis().transpose() * x)).norm() <= tol;
    case ConeSpec::Kind::product: {
      Index off = 0;
      for (const ConeSpec& b : c.blocks()) {
        if (!member(b, x.segment(off, b.ambient_dimension()), tol)) return false;
        off += b.ambient_dimension();
      }
      return true;
    }
    case ConeSpec::Kind::polar: {
      // x in C° iff <x, y> <= 0 for y = proj_C(x)
      const Vector y = project(c.inner(), x).projected;
      return x.dot(y) <= tol * (1.0 + y.norm());
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("cones") {

TEST_CASE("projection examples") {
  const Vector x = (Vector(3) << 1.0, -2.0, 3.0).finished();
  CHECK((project(ConeSpec::orthant(3), x).projected - Vector((Vector(3) << 1.0, 0.0, 3.0).finished())).norm() == 0.0);
  // (u, t) = ((3, 4), 0): |u| = 5 > |t| -> ((|u| + t)/2)(u/|u|, 1)
  const Vector s = (Vector(3) << 3.0, 4.0, 0.0).finished();
  const Vector ps = project(ConeSpec::second_order(3), s).projected;
  CHECK((ps - Vector((Vector(3) << 1.5, 2.0, 2.5).finished())).norm() < 1e-14);
  // inside and polar regions
  const Vector in = (Vector(3) << 1.0, 0.0, 2.0).finished();
  CHECK((project(ConeSpec::second_order(3), in).projected - in).norm() == 0.0);
  CHECK(project(ConeSpec::second_order(3), -in).projected.norm() == 0.0);
  // psd: diag(2, -1) -> diag(2, 0)
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  const Matrix pm = smat(project(ConeSpec::psd(2), svec(m)).projected, 2);
  CHECK(std::abs(pm(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(pm(1, 1)) < 1e-14);
  // circular cone at 45 degrees in R^2 is {x1 >= |x2|}
  const Vector c = (Vector(2) << 0.0, 1.0).finished();
  CHECK((project(ConeSpec::circular(2, std::numbers::pi / 4), c).projected -
         Vector((Vector(2) << 0.5, 0.5).finished())).norm() < 1e-14);
}

TEST_CASE("moreau decomposition, idempotence, nonexpansiveness, homogeneity") {
  Engine eng(21);
  for (const ConeSpec& cone : sample_cones()) {
    const Index d = cone.ambient_dimension();
    for (int t = 0; t < 1000; ++t) {
      const Vector x = gaussian_vector(d, eng);
      const Vector y = gaussian_vector(d, eng);
      const ProjectionResult p = project(cone, x);
      CHECK((p.projected + p.polar_part - x).norm() <= 1e-10 * (1.0 + x.norm()));
      CHECK(std::abs(p.projected.dot(p.polar_part)) <= 1e-10 * (1.0 + x.squaredNorm()));
      CHECK(std::abs(p.squared_norm - p.projected.squaredNorm()) <= 1e-10 * (1.0 + x.squaredNorm()));
      CHECK(member(cone, p.projected, 1e-9));
      CHECK(member(ConeSpec::polar_of(cone), p.polar_part, 1e-9));
      CHECK((project(cone, p.projected).projected - p.projected).norm() <= 1e-10 * (1.0 + x.norm()));
      CHECK((project(cone, y).projected - p.projected).norm() <= (y - x).norm() + 1e-10);
      for (double tau : {0.0, 0.5, 2.0})
        CHECK((project(cone, tau * x).projected - tau * p.projected).norm() <= 1e-10 * (1.0 + x.norm()));
      Vector out(d);
      project_into(cone, x, out);
      CHECK((out - p.projected).norm() <= 1e-12 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("self-dual cones: projecting onto the polar negates projecting -x") {
  Engine eng(8);
  for (const ConeSpec& cone : {ConeSpec::orthant(5), ConeSpec::second_order(5), ConeSpec::psd(3),
                               ConeSpec::circular(5, std::numbers::pi / 4)}) {
    for (int t = 0; t < 20; ++t) {
      const Vector x = gaussian_vector(cone.ambient_dimension(), eng);
      const Vector polar = project(ConeSpec::polar_of(cone), x).projected;
      CHECK((polar + project(cone, -x).projected).norm() < 1e-10);
    }
  }
}

TEST_CASE("circular cone complementary angles are polar") {
  Engine eng(2);
  const double a = 0.4;
  for (int t = 0; t < 20; ++t) {
    const Vector x = gaussian_vector(6, eng);
    const Vector pc = project(ConeSpec::circular(6, a), x).polar_part;
    const Vector q = project(ConeSpec::circular(6, std::numbers::pi / 2 - a), -x).projected;
    CHECK((pc + q).norm() < 1e-10);
  }
}

TEST_CASE("distance examples") {
  const Vector x = (Vector(2) << -3.0, 4.0).finished();
  CHECK(std::abs(dist_to_cone(ConeSpec::orthant(2), x) - 3.0) < 1e-15);
  CHECK(std::abs(dist_to_cone(ConeSpec::subspace(1, 2), x) - 4.0) < 1e-15);
  CHECK(dist_to_cone(ConeSpec::orthant(2), Vector::Ones(2)) == 0.0);
  CHECK_THROWS_AS(project(ConeSpec::orthant(3), x), DomainError);
}

TEST_CASE("svec round trip keeps the Frobenius norm") {
  Engine eng(6);
  for (Index n : {1, 2, 5}) {
    const Matrix g = gaussian_matrix(n, n, eng);
    const Matrix s = g + g.transpose();
    const Vector v = svec(s);
    CHECK(v.size() == n * (n + 1) / 2);
    CHECK(std::abs(v.norm() - s.norm()) < 1e-12);
    CHECK((smat(v, n) - s).norm() < 1e-12);
  }
}

TEST_CASE("parser") {
  CHECK(parse_cone("orthant(4)").kind() == ConeSpec::Kind::orthant);
  CHECK(parse_cone(" soc( 5 ) ").ambient_dimension() == 5);
  CHECK(parse_cone("psd(3)").ambient_dimension() == 6);
  const ConeSpec c = parse_cone("circ(96, atan(sqrt(1/5)))");
  CHECK(c.ambient_dimension() == 96);
  CHECK(std::abs(c.angle() - std::atan(std::sqrt(0.2))) < 1e-15);
  CHECK(std::abs(parse_cone("circ(3, pi/4)").angle() - std::numbers::pi / 4) < 1e-15);
  const ConeSpec p = parse_cone("product(orthant(2), polar(soc(3)), subspace(1, 4))");
  CHECK(p.kind() == ConeSpec::Kind::product);
  CHECK(p.ambient_dimension() == 9);
  for (const ConeSpec& s : {c, p, ConeSpec::psd(2), ConeSpec::subspace(2, 3)})
    CHECK(parse_cone(s.describe()).ambient_dimension() == s.ambient_dimension());
  for (const char* bad : {"", "orthant", "orthant(0)", "circ(3, 2)", "bogus(3)", "product()",
                          "orthant(3) x", "subspace(4, 3)", "circ(3, sqrt(-1))"})
    CHECK_THROWS_AS(parse_cone(bad), DomainError);
}

TEST_CASE("circular cone meets a subspace iff the axis is close enough") {
  // L = span(e1 cos b + e2 sin b): hit iff b <= alpha
  const double alpha = 0.5;
  for (double b : {0.1, 0.49, 0.51, 1.0}) {
    Matrix L = Matrix::Zero(3, 1);
    L(0, 0) = std::cos(b);
    L(1, 0) = std::sin(b);
    CHECK(circular_subspace_hit(alpha, L, 3) == (b <= alpha));
  }
  Matrix bad = Matrix::Ones(3, 1);
  CHECK_THROWS_AS(circular_subspace_hit(alpha, bad, 3), DomainError);
  // against the direct optimisation max over the unit sphere of L of the axis component
  Engine eng(12);
  for (int t = 0; t < 200; ++t) {
    const Matrix L = random_stiefel(6, 2, eng);
    const double best = L.row(0).norm();
    CHECK(circular_subspace_hit(0.9, L, 6) == (best >= std::cos(0.9)));
  }
}

}
