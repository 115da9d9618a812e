#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "conelab/linalg.hpp"

namespace conelab {

/// Immutable description of a closed convex cone with an exact projection.
///
///   subspace     span of an orthonormal basis (d x k)
///   orthant      nonnegative orthant of R^d
///   second_order Lorentz cone {(u, t) in R^(n-1) x R : |u| <= t} in R^n
///   circular     {x in R^d : x_1 >= |x| cos(alpha)}, alpha in [0, pi/2]
///   psd          n x n positive semidefinite matrices, stored as vectors of
///                length n(n+1)/2 through the isometric svec map
///   product      Cartesian product, blocks in order
///   polar        polar cone of the inner cone
class ConeSpec {
 public:
  enum class Kind { subspace, orthant, second_order, circular, psd, product, polar };

  /// Span of the columns of B (orthonormalized once here).
  static ConeSpec subspace(const Matrix& B);
  /// span(e_1, ..., e_k) in R^d.
  static ConeSpec subspace(Index k, Index d);
  static ConeSpec orthant(Index d);
  static ConeSpec second_order(Index n);
  static ConeSpec circular(Index d, double alpha);
  static ConeSpec psd(Index n);
  static ConeSpec product(std::vector<ConeSpec> blocks);
  static ConeSpec polar_of(const ConeSpec& inner);

  Kind kind() const { return kind_; }
  Index ambient_dimension() const { return dim_; }

  /// orthant/second_order/circular: d; psd: n; subspace: basis columns.
  Index order() const { return order_; }
  double angle() const { return alpha_; }
  const Matrix& basis() const { return *basis_; }
  const std::vector<ConeSpec>& blocks() const { return *blocks_; }
  const ConeSpec& inner() const { return blocks_->front(); }

  /// Text form accepted by parse_cone().
  std::string describe() const;

 private:
  ConeSpec() = default;

  Kind kind_ = Kind::orthant;
  Index dim_ = 0;
  Index order_ = 0;
  double alpha_ = 0.0;
  std::shared_ptr<const Matrix> basis_;
  std::shared_ptr<const std::vector<ConeSpec>> blocks_;
};

struct ProjectionResult {
  Vector projected;
  Vector polar_part;
  double squared_norm = 0.0;  // |projected|^2
};

/// Euclidean projection onto the cone together with the Moreau complement.
/// Throws DomainError on a length mismatch.
ProjectionResult project(const ConeSpec& cone, const Vector& x);

/// Allocation-free projection used by the sampling kernels; `out` must have
/// the ambient length and may not alias `x`.
void project_into(const ConeSpec& cone, Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out);

/// |x - proj_C(x)|, the distance from x to the cone.
double dist_to_cone(const ConeSpec& cone, const Vector& x);

/// Whether Circ_d(alpha) and the subspace spanned by the orthonormal columns
/// of L share a nonzero point, decided by |proj_L e_1| >= cos(alpha).
/// Throws DomainError if L is not orthonormal to 1e-8.
bool circular_subspace_hit(double alpha, const Matrix& L, Index d);

/// svec: symmetric n x n matrix to its n(n+1)/2 vector, off-diagonal entries
/// scaled by sqrt(2) so that the Euclidean norm equals the Frobenius norm.
Vector svec(const Matrix& S);
Matrix smat(const Vector& v, Index n);

/// Parses the grammar
///   orthant(d) | soc(n) | circ(d, alpha) | psd(n) | subspace(k, d)
///   | product(c1, c2, ...) | polar(c)
/// where alpha is in radians and may be written as an expression of numbers,
/// pi, sqrt(.), atan(.), '*' and '/', e.g. circ(96, atan(sqrt(1/5))).
/// Throws DomainError with the offending position on malformed input.
ConeSpec parse_cone(std::string_view text);

}  // namespace conelab
