#pragma once

#include <span>

namespace conelab {

struct BinomialPoint {
  double x = 0.0;
  long successes = 0;
  long trials = 0;
};

/// Logistic model p(x) = 1 / (1 + exp(-(beta0 + beta1 x))) with centre
/// mu = -beta0 / beta1.
struct LogisticFit {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double mu = 0.0;
  bool separated = false;  // data perfectly separable or one-sided; slope clamped
  int iterations = 0;

  /// Distance between the 5% and 95% points, 2 log(19) / |beta1|.
  double width_5_95() const;
};

/// Slope magnitude used when the likelihood has no finite maximiser.
inline constexpr double kLogisticSlopeCap = 50.0;

/// Maximum-likelihood fit by iteratively reweighted least squares (ridge
/// 1e-8, at most 100 iterations). Perfectly separated data is detected up
/// front: the slope is clamped to kLogisticSlopeCap and mu is placed at the
/// midpoint of the separating gap. A column with only successes (or only
/// failures) is reported as separated with mu half a spacing beyond the
/// observed range, on the side implied by `orientation` (+1 when success
/// grows with x, -1 when it falls). Throws DomainError with fewer than two
/// distinct abscissas.
LogisticFit logistic_fit(std::span<const BinomialPoint> points, double orientation = 1.0);

}  // namespace conelab
