#include <cmath>
#include <numbers>
#include <sstream>

#include "conelab/cone.hpp"

namespace conelab {

ConeSpec ConeSpec::subspace(const Matrix& B) {
  if (B.cols() > B.rows()) throw DomainError("subspace: more basis vectors than dimensions");
  ConeSpec c;
  c.kind_ = Kind::subspace;
  c.dim_ = B.rows();
  c.order_ = B.cols();
  if (B.cols() > 0 && Eigen::ColPivHouseholderQR<Matrix>(B).rank() != B.cols())
    throw DomainError("subspace: basis is not of full column rank");
  Matrix Q = orthonormal_basis(B);
  c.basis_ = std::make_shared<const Matrix>(std::move(Q));
  return c;
}

ConeSpec ConeSpec::subspace(Index k, Index d) {
  if (d < 1 || k < 0 || k > d) throw DomainError("subspace: need 0 <= k <= d, d >= 1");
  ConeSpec c;
  c.kind_ = Kind::subspace;
  c.dim_ = d;
  c.order_ = k;
  c.basis_ = std::make_shared<const Matrix>(Matrix::Identity(d, k));
  return c;
}

ConeSpec ConeSpec::orthant(Index d) {
  if (d < 1) throw DomainError("orthant: need d >= 1");
  ConeSpec c;
  c.kind_ = Kind::orthant;
  c.dim_ = c.order_ = d;
  return c;
}

ConeSpec ConeSpec::second_order(Index n) {
  if (n < 1) throw DomainError("second_order: need n >= 1");
  ConeSpec c;
  c.kind_ = Kind::second_order;
  c.dim_ = c.order_ = n;
  return c;
}

ConeSpec ConeSpec::circular(Index d, double alpha) {
  if (d < 1) throw DomainError("circular: need d >= 1");
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2))
    throw DomainError("circular: angle must lie in [0, pi/2]");
  ConeSpec c;
  c.kind_ = Kind::circular;
  c.dim_ = c.order_ = d;
  c.alpha_ = alpha;
  return c;
}

ConeSpec ConeSpec::psd(Index n) {
  if (n < 1) throw DomainError("psd: need n >= 1");
  ConeSpec c;
  c.kind_ = Kind::psd;
  c.order_ = n;
  c.dim_ = n * (n + 1) / 2;
  return c;
}

ConeSpec ConeSpec::product(std::vector<ConeSpec> blocks) {
  if (blocks.empty()) throw DomainError("product: need at least one block");
  ConeSpec c;
  c.kind_ = Kind::product;
  for (const auto& b : blocks) c.dim_ += b.dim_;
  c.order_ = static_cast<Index>(blocks.size());
  c.blocks_ = std::make_shared<const std::vector<ConeSpec>>(std::move(blocks));
  return c;
}

ConeSpec ConeSpec::polar_of(const ConeSpec& inner) {
  ConeSpec c;
  c.kind_ = Kind::polar;
  c.dim_ = inner.dim_;
  c.blocks_ = std::make_shared<const std::vector<ConeSpec>>(std::vector<ConeSpec>{inner});
  return c;
}

std::string ConeSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::subspace:
      os << "subspace(" << order_ << "," << dim_ << ")";
      break;
    case Kind::orthant:
      os << "orthant(" << dim_ << ")";
      break;
    case Kind::second_order:
      os << "soc(" << dim_ << ")";
      break;
    case Kind::circular:
      os << "circ(" << dim_ << "," << alpha_ << ")";
      break;
    case Kind::psd:
      os << "psd(" << order_ << ")";
      break;
    case Kind::product: {
      os << "product(";
      for (std::size_t i = 0; i < blocks_->size(); ++i)
        os << (i ? "," : "") << (*blocks_)[i].describe();
      os << ")";
      break;
    }
    case Kind::polar:
      os << "polar(" << inner().describe() << ")";
      break;
  }
  return os.str();
}

Vector svec(const Matrix& S) {
  const Index n = S.rows();
  if (S.cols() != n) throw DomainError("svec: matrix must be square");
  Vector v(n * (n + 1) / 2);
  Index k = 0;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i <= j; ++i)
      v[k++] = i == j ? S(i, i) : std::numbers::sqrt2 * 0.5 * (S(i, j) + S(j, i));
  return v;
}

Matrix smat(const Vector& v, Index n) {
  if (v.size() != n * (n + 1) / 2) throw DomainError("smat: length is not n(n+1)/2");
  Matrix S(n, n);
  Index k = 0;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i <= j; ++i) {
      const double e = i == j ? v[k] : v[k] / std::numbers::sqrt2;
      S(i, j) = S(j, i) = e;
      ++k;
    }
  return S;
}

}  // namespace conelab
