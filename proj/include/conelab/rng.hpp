#pragma once

#include <cstdint>
#include <random>

#include "conelab/linalg.hpp"

namespace conelab {

using Engine = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// Immutable token naming a reproducible random stream.
///
/// The engine for a stream is seeded from a hash of (master_seed, stream_id),
/// so any two holders of the same token draw bit-identical sequences no
/// matter which thread or in which order they run. Substreams are derived by
/// hashing, which makes the sample-to-stream mapping independent of how work
/// is partitioned.
class RngStream {
 public:
  constexpr explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0) noexcept
      : master_seed_(master_seed), stream_id_(stream_id) {}

  constexpr std::uint64_t master_seed() const noexcept { return master_seed_; }
  constexpr std::uint64_t stream_id() const noexcept { return stream_id_; }

  constexpr RngStream substream(std::uint64_t id) const noexcept {
    return RngStream(master_seed_, hash_combine(stream_id_, id));
  }

  Engine engine() const { return Engine(hash_combine(mix64(master_seed_), stream_id_)); }

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
};

Vector gaussian_vector(Index dim, Engine& engine);
Vector gaussian_vector(Index dim, const RngStream& rng);
Matrix gaussian_matrix(Index rows, Index cols, Engine& engine);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q).
Matrix random_orthogonal(Index dim, Engine& engine);
Matrix random_orthogonal(Index dim, const RngStream& rng);

/// dim x k matrix with orthonormal columns, uniform on the Stiefel manifold.
Matrix random_stiefel(Index dim, Index k, Engine& engine);

/// Uniformly random k-subset of {0..n-1}, returned sorted.
std::vector<Index> random_subset(Index n, Index k, Engine& engine);

}  // namespace conelab
