#include "conelab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace conelab {

namespace {

void require_finite(const Matrix& M, const char* who) {
  if (!M.allFinite()) throw NumericalError(std::string(who) + ": non-finite entries");
}

}  // namespace

SvdResult svd(const Matrix& M) {
  require_finite(M, "svd");
  if (M.size() == 0) return {Matrix(M.rows(), 0), Vector(0), Matrix(M.cols(), 0)};
  Eigen::JacobiSVD<Matrix> js(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (js.info() != Eigen::Success) throw NumericalError("svd: Jacobi sweeps did not converge");
  return {js.matrixU(), js.singularValues(), js.matrixV()};
}

Vector singular_values(const Matrix& M) {
  require_finite(M, "singular_values");
  if (M.size() == 0) return Vector(0);
  Eigen::JacobiSVD<Matrix> js(M);
  if (js.info() != Eigen::Success)
    throw NumericalError("singular_values: Jacobi sweeps did not converge");
  return js.singularValues();
}

SymmetricEigen symmetric_eigen(const Matrix& S) {
  require_finite(S, "symmetric_eigen");
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric_eigen: no convergence");
  return {es.eigenvalues(), es.eigenvectors()};
}

double spectral_norm_estimate(const Matrix& M, int iterations, double rel_tol) {
  if (M.size() == 0) return 0.0;
  // deterministic start with all-ones plus a ramp, so it is never orthogonal
  // to the top right-singular vector in practice
  Vector v = Vector::LinSpaced(M.cols(), 1.0, 2.0);
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = M.transpose() * (M * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = std::sqrt(nw);
    v = w / nw;
    if (std::abs(next - sigma) <= rel_tol * next) return next;
    sigma = next;
  }
  return sigma;
}

Matrix orthonormal_basis(const Matrix& B) {
  if (B.cols() == 0) return Matrix(B.rows(), 0);
  Eigen::HouseholderQR<Matrix> qr(B);
  return qr.householderQ() * Matrix::Identity(B.rows(), B.cols());
}

Matrix null_space_basis(const Matrix& A) {
  const Index m = A.rows();
  const Index d = A.cols();
  if (m == 0) return Matrix::Identity(d, d);
  // full QR of A^T: the trailing d - m columns of Q span ker(A)
  Eigen::HouseholderQR<Matrix> qr(A.transpose());
  Matrix Q = qr.householderQ();
  return Q.rightCols(d - m);
}

double orthogonality_defect(const Matrix& Q) {
  if (Q.cols() == 0) return 0.0;
  return (Q.transpose() * Q - Matrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
}

}  // namespace conelab
