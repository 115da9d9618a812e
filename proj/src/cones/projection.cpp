#include <cmath>

#include "conelab/cone.hpp"

namespace conelab {

namespace {

// Rotationally symmetric cone {x : x_a >= |x| cos(alpha)} about coordinate a.
// Points in the polar cone (including its boundary) go to zero.
void project_round(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out, Index axis, double ca,
                   double sa) {
  const double t = x[axis];
  const double r = std::sqrt(std::max(0.0, x.squaredNorm() - t * t));
  const double norm = std::hypot(t, r);
  if (t >= norm * ca) {
    out = x;
    return;
  }
  const double c = t * ca + r * sa;  // component along the nearest boundary ray
  if (c <= 0.0 || r == 0.0) {
    out.setZero();
    return;
  }
  out = x * (c * sa / r);
  out[axis] = c * ca;
}

void project_psd(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out, Index n) {
  const SymmetricEigen es = symmetric_eigen(smat(x, n));
  const Vector lam = es.values.cwiseMax(0.0);
  out = svec(es.vectors * lam.asDiagonal() * es.vectors.transpose());
}

}  // namespace

void project_into(const ConeSpec& cone, Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out) {
  if (x.size() != cone.ambient_dimension() || out.size() != cone.ambient_dimension())
    throw DomainError("project: vector length " + std::to_string(x.size()) +
                      " does not match cone dimension " +
                      std::to_string(cone.ambient_dimension()));
  using K = ConeSpec::Kind;
  switch (cone.kind()) {
    case K::subspace: {
      const Matrix& Q = cone.basis();
      out.noalias() = Q * (Q.transpose() * x);
      return;
    }
    case K::orthant:
      out = x.cwiseMax(0.0);
      return;
    case K::second_order: {
      constexpr double h = 0.70710678118654752440;
      project_round(x, out, x.size() - 1, h, h);
      return;
    }
    case K::circular:
      project_round(x, out, 0, std::cos(cone.angle()), std::sin(cone.angle()));
      return;
    case K::psd:
      project_psd(x, out, cone.order());
      return;
    case K::product: {
      Index at = 0;
      for (const auto& b : cone.blocks()) {
        const Index k = b.ambient_dimension();
        project_into(b, x.segment(at, k), out.segment(at, k));
        at += k;
      }
      return;
    }
    case K::polar:
      project_into(cone.inner(), x, out);
      out = x - out;
      return;
  }
}

ProjectionResult project(const ConeSpec& cone, const Vector& x) {
  ProjectionResult r;
  r.projected.resize(cone.ambient_dimension());
  project_into(cone, x, r.projected);
  r.polar_part = x - r.projected;
  r.squared_norm = r.projected.squaredNorm();
  return r;
}

double dist_to_cone(const ConeSpec& cone, const Vector& x) {
  return project(cone, x).polar_part.norm();
}

bool circular_subspace_hit(double alpha, const Matrix& L, Index d) {
  if (L.rows() != d) throw DomainError("circular_subspace_hit: basis has wrong row count");
  if (orthogonality_defect(L) > 1e-8)
    throw DomainError("circular_subspace_hit: basis columns are not orthonormal");
  if (L.cols() == 0) return false;
  // the largest first coordinate over unit vectors of L is |proj_L e_1|
  return L.row(0).norm() >= std::cos(alpha);
}

}  // namespace conelab
