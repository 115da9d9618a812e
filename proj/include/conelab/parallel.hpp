#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace conelab {

/// Execution policy for the data-parallel kernels. Every kernel produces
/// bit-identical output under both policies: work is split into fixed-size
/// chunks whose partial results are combined in chunk order.
enum class Exec { serial, parallel };

/// Streaming first and second moments with an ordered, deterministic merge.
struct Moments {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++count;
    sum += v;
    sum_sq += v * v;
  }
  void merge(const Moments& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }
  double variance() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double m = sum / n;
    return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
  }
  double stderr_of_mean() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

inline constexpr std::int64_t kDefaultChunk = 256;

/// Runs fn(i) for every i in [0, n). Exceptions cannot cross the OpenMP
/// region, so the one raised at the lowest index is captured and rethrown
/// afterwards.
template <class Fn>
void for_each_index(std::int64_t n, Fn&& fn, Exec exec) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n > 0 ? n : 0));
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel && n > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed)
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
}

/// Runs body(chunk, begin, end) -> T over [0, n) in chunks of `chunk` items
/// and folds the partials with merge(acc, partial) in chunk order.
template <class T, class Body, class Merge>
T chunked_reduce(std::int64_t n, std::int64_t chunk, Body&& body, Merge&& merge, T init,
                 Exec exec) {
  const std::int64_t chunks = n <= 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<T> partial(static_cast<std::size_t>(chunks));
  for_each_index(
      chunks,
      [&](std::int64_t c) {
        const std::int64_t begin = c * chunk;
        const std::int64_t end = std::min(n, begin + chunk);
        partial[static_cast<std::size_t>(c)] = body(c, begin, end);
      },
      exec);
  for (auto& p : partial) merge(init, p);
  return init;
}

}  // namespace conelab
