#include "conelab/rng.hpp"

#include <algorithm>
#include <numeric>

namespace conelab {

Vector gaussian_vector(Index dim, Engine& engine) {
  std::normal_distribution<double> normal;
  Vector g(dim);
  for (Index i = 0; i < dim; ++i) g[i] = normal(engine);
  return g;
}

Vector gaussian_vector(Index dim, const RngStream& rng) {
  Engine engine = rng.engine();
  return gaussian_vector(dim, engine);
}

Matrix gaussian_matrix(Index rows, Index cols, Engine& engine) {
  std::normal_distribution<double> normal;
  Matrix G(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) G(i, j) = normal(engine);
  return G;
}

Matrix random_stiefel(Index dim, Index k, Engine& engine) {
  if (k == 0) return Matrix(dim, 0);
  const Matrix G = gaussian_matrix(dim, k, engine);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(dim, k);
  const Matrix& R = qr.matrixQR();
  for (Index j = 0; j < k; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

Matrix random_orthogonal(Index dim, Engine& engine) { return random_stiefel(dim, dim, engine); }

Matrix random_orthogonal(Index dim, const RngStream& rng) {
  Engine engine = rng.engine();
  return random_orthogonal(dim, engine);
}

std::vector<Index> random_subset(Index n, Index k, Engine& engine) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  // partial Fisher-Yates
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(engine))]);
  }
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace conelab
