#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "conelab/cone.hpp"
#include "conelab/parallel.hpp"
#include "conelab/rng.hpp"

namespace conelab {

enum class StatDimMethod { closed_form, variational, monte_carlo };

std::string to_string(StatDimMethod m);

struct StatDimEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact values
  double lower = 0.0;
  double upper = 0.0;
  StatDimMethod method = StatDimMethod::closed_form;
  bool asymptotic = false;              // value is a large-dimension limit
  std::optional<double> finite_size;    // sampled recipe value, when requested
  double finite_size_std_error = 0.0;
};

/// Exact statistical dimension when a rule applies: subspaces, orthants,
/// second-order and PSD cones, circular cones (by quadrature), products and
/// polars of those. Returns nullopt otherwise.
std::optional<StatDimEstimate> statdim_closed_form(const ConeSpec& cone);

/// Statistical dimension of Circ_d(alpha) from the one-dimensional integral
/// over the angle to the axis. Absolute error below 1e-6.
double statdim_circular_exact(Index d, double alpha);

/// d sin^2(alpha) + cos(2 alpha).
double statdim_circular_asymptotic(Index d, double alpha);

/// Sample mean of |proj_C(g)|^2. Chunk c of kDefaultChunk samples draws from
/// rng.substream(c), so the estimate does not depend on the execution policy.
StatDimEstimate statdim_monte_carlo(const ConeSpec& cone, std::int64_t samples,
                                    const RngStream& rng, Exec exec = Exec::parallel);

/// Normalized statistical dimension of the l1 descent cone at a vector with
/// sparsity fraction rho, in [0, 1].
double psi_l1(double rho);

/// Minimizing threshold tau for psi_l1 (infinity at rho = 0, 0 at rho = 1).
double psi_l1_tau(double rho);

/// Upper bound d psi(s/d) with lower bound max(s - 1, d psi(s/d) - 2 sqrt(d/s)).
StatDimEstimate statdim_l1_descent(Index s, Index d);

struct PsiS1 {
  double value = 0.0;
  double tau = 0.0;
  bool clamped = false;  // rho or nu was moved into the stable range
};

/// Normalized statistical dimension of the nuclear-norm descent cone at a
/// matrix with rank fraction rho and aspect ratio nu in the large-size limit.
/// rho is clamped to [1e-3, 1 - 1e-3] (rho = 0 and rho = 1 return their exact
/// limits) and nu below 1e-3 is raised to 1e-3; nu = 1 is evaluated directly.
PsiS1 psi_s1_detail(double rho, double nu);
double psi_s1(double rho, double nu);

/// Integral of g(u) against the Marchenko-Pastur singular-value density with
/// parameter y in (0, 1] over [max(1 - sqrt(y), tau), 1 + sqrt(y)]. Evaluated
/// after the substitution u^2 = 1 + y + 2 sqrt(y) cos(theta), which removes
/// the square-root endpoint singularities.
double mp_singular_integral(double y, double tau, const std::function<double(double)>& g);

/// m n psi_s1(r/m, m/n), flagged asymptotic. With finite_size_samples > 0 the
/// sampled recipe value for the actual (r, m, n) is attached.
StatDimEstimate statdim_s1_descent(Index r, Index m, Index n,
                                   std::int64_t finite_size_samples = 0,
                                   const RngStream& rng = RngStream(0),
                                   Exec exec = Exec::parallel);

/// H_d for the normal cone of the permutahedron at a generic point, H_d / 2
/// for the signed permutahedron.
double statdim_permutahedron(Index d, bool signed_variant);

/// Subdifferential oracle for an arbitrary norm-like regularizer.
struct GenericOracle {
  Index dim = 0;
  /// dist^2(g, tau S) where S is the subdifferential at the point.
  std::function<double(const Vector& g, double tau)> dist2;
  double sup_norm = 0.0;          // B >= sup{|s| : s in S}
  double normalized_value = 0.0;  // f(x / |x|)
};

struct SubdifferentialModel {
  enum class Kind { l1, s1, generic };
  Kind kind = Kind::l1;
  Index s = 0, d = 0;         // l1: s nonzeros in R^d
  Index r = 0, m = 0, n = 0;  // s1: rank r, m x n with m <= n
  GenericOracle oracle;

  static SubdifferentialModel l1(Index s, Index d);
  static SubdifferentialModel s1(Index r, Index m, Index n);
  static SubdifferentialModel generic(GenericOracle oracle);

  Index ambient_dimension() const;
};

struct RecipeCurve {
  double tau_star = 0.0;
  double F_min = 0.0;
  double std_error = 0.0;  // sample standard error of F at tau_star
  std::int64_t samples_per_tau = 0;
  bool vacuous = false;  // minimiser ran into the top of the bracket
};

/// Sample-average version of F(tau) = E dist^2(g, tau S), minimised over
/// [1e-8, 10 sqrt(d)] with common random numbers across tau.
RecipeCurve recipe_statdim(const SubdifferentialModel& model, std::int64_t samples,
                           const RngStream& rng, Exec exec = Exec::parallel);

/// Sample average of dist^2(g, tau S) at a single tau, computed sample by
/// sample from the same draws recipe_statdim uses.
Moments recipe_objective(const SubdifferentialModel& model, double tau, std::int64_t samples,
                         const RngStream& rng, Exec exec = Exec::parallel);

/// 2 B / f(x/|x|): 2 sqrt(d/s) for l1, 2 sqrt(m/r) for s1.
double descent_error_bound(const SubdifferentialModel& model);

struct WidthEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Gaussian width E sup{<g, x> : x in C, |x| = 1} by sampling, with the
/// supremum in closed form. Supports subspace, orthant, second-order,
/// circular, psd and products of these; throws DomainError otherwise.
WidthEstimate gaussian_width_mc(const ConeSpec& cone, std::int64_t samples,
                                const RngStream& rng, Exec exec = Exec::parallel);

/// Per-draw supremum used by gaussian_width_mc.
double sphere_support(const ConeSpec& cone, Eigen::Ref<const Vector> g);

}  // namespace conelab
