#pragma once

#include <cstdint>
#include <string>

#include "conelab/cone.hpp"
#include "conelab/parallel.hpp"
#include "conelab/rng.hpp"

namespace conelab {

/// Conic intrinsic volumes v_0..v_d of a closed convex cone in R^d.
struct IntrinsicVolumes {
  Index d = 0;
  Vector v;  // length d + 1
  bool is_subspace = false;
};

IntrinsicVolumes ivols_subspace(Index j, Index d);

/// Binomial(d, 1/2) weights.
IntrinsicVolumes ivols_orthant(Index d);

/// Circ_d(alpha) for 0 < alpha < pi/2: interior entries from the analytic
/// binomial formula, v_d and v_0 from the spherical-cap masses of angles
/// alpha and pi/2 - alpha. Residual mass above 1e-8 raises NumericalError.
IntrinsicVolumes ivols_circular(Index d, double alpha);

/// Volumes of C x K (discrete convolution).
IntrinsicVolumes ivols_product(const IntrinsicVolumes& a, const IntrinsicVolumes& b);

/// Volumes of the polar cone: v_k(C°) = v_{d-k}(C).
IntrinsicVolumes ivols_polar(const IntrinsicVolumes& a);

/// Volumes for any cone built from subspaces, orthants, second-order cones,
/// circular cones, products and polars. Throws DomainError for psd.
IntrinsicVolumes ivols_of(const ConeSpec& cone);

/// t_k = v_k + v_{k+1} + ... and h_k = v_k + v_{k+2} + ... for 0 <= k <= d + 1
/// (both vanish at d + 1).
double tail(const IntrinsicVolumes& iv, Index k);
double half_tail(const IntrinsicVolumes& iv, Index k);

/// sum_k k v_k.
double statdim_from_ivols(const IntrinsicVolumes& iv);

struct IvolsDefects {
  double mass = 0.0;          // |sum v_k - 1|
  double negativity = 0.0;    // max(0, -min v_k)
  double gauss_bonnet = 0.0;  // max |even sum - 1/2|, |odd sum - 1/2| (0 for subspaces)
  double interlacing = 0.0;   // largest violation of 2 h_k >= t_k >= 2 h_{k+1}
  double worst() const;
};

IvolsDefects check_ivols(const IntrinsicVolumes& iv);

/// P{|proj_{L_k}(theta)|^2 >= eps} for theta uniform on the sphere in R^d and
/// a fixed k-dimensional subspace: the upper tail of Beta(k/2, (d-k)/2).
double tropic(Index k, Index d, double eps);

/// sum_k v_k I_k^d(eps).
double steiner_rhs(const IntrinsicVolumes& iv, double eps);

/// Sampled P{|proj_C(theta)|^2 >= eps} over uniform theta on the sphere.
Moments steiner_lhs_mc(const ConeSpec& cone, double eps, std::int64_t samples,
                       const RngStream& rng, Exec exec = Exec::parallel);

struct ConcentrationBound {
  double value = 0.0;     // min(1, raw)
  double raw = 0.0;       // 4 exp(-(lambda^2/8) / (omega^2 + lambda))
  double weakened = 0.0;  // 4 exp(-lambda^2 / (16 omega^2)) or 4 exp(-lambda / 16)
  double omega_sq = 0.0;  // min(delta, delta_polar)
};

/// Tail bound for the intrinsic-volume distribution around delta:
/// t_k <= value for k >= delta + lambda and t_k >= 1 - value for
/// k <= delta - lambda + 1.
ConcentrationBound concentration_bound(double delta, double delta_polar, double lambda);

/// Probability 2 h_{m+1}(C) that a uniformly random subspace of codimension
/// m meets C nontrivially. Refuses subspaces.
double crofton(const IntrinsicVolumes& iv, Index m);

/// Probability 2 h_{d+1}(C x K) that C and a uniformly rotated K meet
/// nontrivially. Refuses a subspace C.
double kinematic_exact(const IntrinsicVolumes& c, const IntrinsicVolumes& k);

/// 4 sqrt(log(4 / eta)).
double a_eta(double eta);

struct KinematicPrediction {
  enum class Verdict { likely_hit, likely_miss, transition_zone };
  Verdict verdict = Verdict::transition_zone;
  double bound = 1.0;      // p_C(lambda) + p_K(lambda), clamped to [0, 1]
  double raw_bound = 0.0;  // before clamping
  double lambda = 0.0;
  double a_eta = 0.0;
};

std::string to_string(KinematicPrediction::Verdict v);

/// Approximate kinematic verdict for a cone C and a randomly rotated cone K
/// in R^d from their statistical dimensions.
KinematicPrediction kinematic_predict(double delta_c, double delta_k, Index d, double eta);

struct ProductTail {
  double lhs = 0.0;  // t_{ceil(dC + dK + 2 lambda)}(C x K)
  double rhs = 0.0;  // t_{ceil(dC + lambda)}(C) + t_{ceil(dK + lambda)}(K)
  bool holds = false;
};

ProductTail product_tail_check(const IntrinsicVolumes& c, const IntrinsicVolumes& k, double lambda);

}  // namespace conelab
