#include <cmath>
#include <numbers>

#include <doctest.h>

#include "conelab/kinematics.hpp"
#include "conelab/special.hpp"
#include "conelab/statdim.hpp"

using namespace conelab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<IntrinsicVolumes> sample_volumes() {
  return {ivols_orthant(9),
          ivols_circular(12, 0.4),
          ivols_circular(40, 1.2),
          ivols_of(ConeSpec::second_order(7)),
          ivols_product(ivols_orthant(3), ivols_circular(6, 0.8)),
          ivols_polar(ivols_circular(10, 0.3))};
}

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("intrinsic volume examples") {
  const IntrinsicVolumes l = ivols_subspace(3, 7);
  CHECK(l.is_subspace);
  CHECK(l.v[3] == 1.0);
  CHECK(l.v.sum() == 1.0);
  const IntrinsicVolumes o = ivols_orthant(4);
  const double binom[] = {1, 4, 6, 4, 1};
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(o.v[k] - binom[k] / 16.0) < 1e-15);
  // the Lorentz cone in R^2 is a quarter plane: same as the orthant
  const IntrinsicVolumes q = ivols_of(ConeSpec::second_order(2));
  for (int k = 0; k <= 2; ++k) CHECK(std::abs(q.v[k] - ivols_orthant(2).v[k]) < 1e-12);
  // Circ_2(alpha): v_2 = alpha / pi, v_1 = 1/2
  const IntrinsicVolumes c2 = ivols_circular(2, 0.3);
  CHECK(std::abs(c2.v[2] - 0.3 / kPi) < 1e-12);
  CHECK(std::abs(c2.v[1] - 0.5) < 1e-12);
  CHECK_THROWS_AS(ivols_of(ConeSpec::psd(3)), DomainError);
}

TEST_CASE("intrinsic volume invariants") {
  for (const IntrinsicVolumes& iv : sample_volumes()) {
    const IvolsDefects def = check_ivols(iv);
    CHECK(def.mass < 1e-10);
    CHECK(def.negativity == 0.0);
    CHECK(def.gauss_bonnet < 1e-10);
    CHECK(def.interlacing < 1e-10);
    CHECK(tail(iv, 0) == doctest::Approx(1.0));
    CHECK(tail(iv, iv.d + 1) == 0.0);
    CHECK(half_tail(iv, iv.d + 1) == 0.0);
  }
}

TEST_CASE("statistical dimension from the volumes matches the direct value") {
  for (int d : {3, 12, 50})
    for (double a : {0.2, 0.7, 1.4}) {
      const double from_iv = statdim_from_ivols(ivols_circular(d, a));
      CHECK(std::abs(from_iv - statdim_circular_exact(d, a)) < 1e-7);
    }
  CHECK(std::abs(statdim_from_ivols(ivols_orthant(11)) - 5.5) < 1e-12);
}

TEST_CASE("polarity reverses the sequence") {
  const IntrinsicVolumes o = ivols_orthant(13);
  for (Index k = 0; k <= 13; ++k) CHECK(std::abs(ivols_polar(o).v[k] - o.v[k]) < 1e-15);
  const IntrinsicVolumes c = ivols_circular(9, 0.5);
  const IntrinsicVolumes p = ivols_polar(c);
  for (Index k = 0; k <= 9; ++k) CHECK(p.v[k] == c.v[9 - k]);
  const IntrinsicVolumes direct = ivols_circular(9, kPi / 2 - 0.5);
  for (Index k = 0; k <= 9; ++k) CHECK(std::abs(p.v[k] - direct.v[k]) < 1e-12);
}

TEST_CASE("tail examples") {
  const IntrinsicVolumes o = ivols_orthant(2);  // 1/4, 1/2, 1/4
  CHECK(tail(o, 1) == doctest::Approx(0.75));
  CHECK(half_tail(o, 0) == doctest::Approx(0.5));
  CHECK(half_tail(o, 1) == doctest::Approx(0.5));
  CHECK(tail(o, 2) == doctest::Approx(0.25));
  CHECK_THROWS_AS(tail(o, 4), DomainError);
  CHECK_THROWS_AS(tail(o, -1), DomainError);
}

TEST_CASE("tropic function") {
  CHECK(tropic(4, 4, 0.7) == doctest::Approx(1.0));
  CHECK(tropic(0, 4, 0.2) == 0.0);
  CHECK(tropic(2, 5, 0.0) == 1.0);
  // k = 1, d = 3: |theta_1|^2 is Beta(1/2, 1), P{ >= eps} = 1 - sqrt(eps)
  CHECK(std::abs(tropic(1, 3, 0.36) - 0.4) < 1e-12);
  CHECK_THROWS_AS(tropic(5, 4, 0.5), DomainError);
  CHECK_THROWS_AS(tropic(2, 4, 1.5), DomainError);
}

TEST_CASE("steiner formula against sampling") {
  const RngStream rng(44);
  for (const ConeSpec& c : {ConeSpec::circular(10, 0.6), ConeSpec::orthant(6),
                            ConeSpec::product({ConeSpec::second_order(4), ConeSpec::orthant(2)})})
    for (double eps : {0.1, 0.5, 0.9}) {
      const Moments m = steiner_lhs_mc(c, eps, 40000, rng);
      CHECK(std::abs(m.mean() - steiner_rhs(ivols_of(c), eps)) <= 4.0 * m.stderr_of_mean() + 1e-3);
    }
}

TEST_CASE("concentration bound") {
  const ConcentrationBound zero = concentration_bound(10.0, 30.0, 0.0);
  CHECK(zero.value == 1.0);
  const ConcentrationBound b = concentration_bound(10.0, 30.0, 20.0);
  CHECK(b.omega_sq == 10.0);
  CHECK(std::abs(b.raw - 4.0 * std::exp(-50.0 / 30.0)) < 1e-12);
  CHECK(b.raw <= b.weakened);
  CHECK_THROWS_AS(concentration_bound(1.0, 1.0, -1.0), DomainError);
  // the bound actually holds on explicit volume sequences
  for (const IntrinsicVolumes& iv : sample_volumes()) {
    const double delta = statdim_from_ivols(iv);
    for (double lambda : {1.0, 3.0, 8.0}) {
      const ConcentrationBound cb = concentration_bound(delta, iv.d - delta, lambda);
      for (Index k = 0; k <= iv.d; ++k) {
        if (k >= delta + lambda) CHECK(tail(iv, k) <= cb.value + 1e-12);
        if (k <= delta - lambda + 1) CHECK(tail(iv, k) >= 1.0 - cb.value - 1e-12);
      }
    }
  }
}

TEST_CASE("crofton formula against random subspaces") {
  // a uniformly random subspace of codimension m meets Circ_d(alpha) iff its
  // projection of the axis is long enough
  Engine eng(99);
  const Index d = 10;
  const double alpha = 0.7;
  const IntrinsicVolumes iv = ivols_circular(d, alpha);
  for (Index m : {2, 5, 8}) {
    const int n = 20000;
    int hits = 0;
    for (int t = 0; t < n; ++t) hits += circular_subspace_hit(alpha, random_stiefel(d, d - m, eng), d);
    const double p = crofton(iv, m);
    CHECK(std::abs(hits / double(n) - p) <= 4.0 * std::sqrt(p * (1 - p) / n) + 1e-3);
  }
  CHECK(crofton(iv, d) == 0.0);
  CHECK(crofton(iv, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(crofton(ivols_subspace(2, 5), 1), DomainError);
}

TEST_CASE("kinematic formula with a subspace reduces to crofton") {
  const IntrinsicVolumes c = ivols_circular(11, 0.9);
  for (Index j : {1, 4, 10})
    CHECK(std::abs(kinematic_exact(c, ivols_subspace(j, 11)) - crofton(c, 11 - j)) < 1e-12);
  // symmetric in the two cones when neither is a subspace
  const IntrinsicVolumes k = ivols_orthant(11);
  CHECK(std::abs(kinematic_exact(c, k) - kinematic_exact(k, c)) < 1e-12);
  CHECK_THROWS_AS(kinematic_exact(c, ivols_orthant(10)), DomainError);
}

TEST_CASE("product tail inequality") {
  const IntrinsicVolumes c = ivols_circular(30, 0.6), k = ivols_orthant(20);
  for (double lambda : {0.0, 1.0, 2.5, 6.0}) {
    const ProductTail pt = product_tail_check(c, k, lambda);
    CHECK(pt.holds);
    CHECK(pt.lhs >= 0.0);
  }
}

TEST_CASE("kinematic prediction") {
  CHECK(std::abs(a_eta(0.05) - 4.0 * std::sqrt(std::log(80.0))) < 1e-12);
  CHECK_THROWS_AS(a_eta(0.0), DomainError);
  const double w = a_eta(0.05) * 10.0;
  CHECK(kinematic_predict(5, 5, 100, 0.05).verdict == KinematicPrediction::Verdict::likely_miss);
  CHECK(kinematic_predict(100 - w, 0, 100, 0.05).verdict == KinematicPrediction::Verdict::likely_miss);
  CHECK(kinematic_predict(50, 50, 100, 0.05).verdict == KinematicPrediction::Verdict::transition_zone);
  CHECK(kinematic_predict(100, 100 + w, 100, 0.05).verdict == KinematicPrediction::Verdict::likely_hit);
  const KinematicPrediction p = kinematic_predict(10, 20, 100, 0.05);
  CHECK(p.lambda == 35.0);
  CHECK(p.bound <= 1.0);
  CHECK(to_string(p.verdict) == "transition_zone");
}

}
