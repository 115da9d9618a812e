#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace conelab {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using DenseMatrix = Matrix;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SvdResult {
  Matrix U;      // rows x k, orthonormal columns
  Vector sigma;  // k = min(rows, cols), non-increasing, non-negative
  Matrix V;      // cols x k, orthonormal columns
};

/// Thin SVD by two-sided Jacobi rotations. Throws NumericalError if the
/// input has non-finite entries.
SvdResult svd(const Matrix& M);

/// Singular values only (same ordering as svd()).
Vector singular_values(const Matrix& M);

/// Eigenvalues (ascending) and eigenvectors of a symmetric matrix.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};
SymmetricEigen symmetric_eigen(const Matrix& S);

/// Largest singular value estimated by power iteration on M^T M.
double spectral_norm_estimate(const Matrix& M, int iterations = 200, double rel_tol = 1e-10);

/// Orthonormal basis for the column span of B (d x k, full column rank).
Matrix orthonormal_basis(const Matrix& B);

/// Orthonormal basis for ker(A) for a full-row-rank m x d matrix (d x (d-m)).
Matrix null_space_basis(const Matrix& A);

/// max |Q^T Q - I| entry.
double orthogonality_defect(const Matrix& Q);

}  // namespace conelab
