#include "doctest.h"
#include "pshmass/spherical_potential.hpp"
#include "property.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace pshmass;

namespace {

SpherePoint random_point(test::Gen& g, double span) { return SpherePoint(g.real(-span, span), g.real(-span, span)); }

}  // namespace

TEST_CASE("chordal distance") {
  CHECK(chordal_distance(SpherePoint(0.0), SpherePoint::infinity()) == doctest::Approx(1.0));
  CHECK(chordal_distance(SpherePoint(0.0), SpherePoint(1.0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(chordal_distance(SpherePoint(0.3, 0.2), SpherePoint(0.3, 0.2)) == 0.0);
  CHECK(chordal_distance(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
  CHECK(chordal_distance(SpherePoint(2.0), SpherePoint::infinity()) == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK_THROWS_AS(SpherePoint(std::complex<double>(NAN, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint::infinity().coord(), std::domain_error);
}

TEST_CASE("Green function values") {
  CHECK(green(SpherePoint(0.0), SpherePoint(1.0)) == doctest::Approx(0.1103178000763258).epsilon(1e-14));
  CHECK(green(SpherePoint(0.0), SpherePoint::infinity()) == doctest::Approx(0.0));
  CHECK(std::isinf(green(SpherePoint(0.5), SpherePoint(0.5))));
}

TEST_CASE("property: Green function symmetry and the log|z-w|^2 bound") {
  test::for_all(500, 23, [](test::Gen& g) {
    const SpherePoint z = random_point(g, 5.0);
    const SpherePoint w = random_point(g, 5.0);
    CHECK(green(z, w) == doctest::Approx(green(w, z)).epsilon(1e-14));
    const double d = chordal_distance(z, w);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0 + 1e-15);
    CHECK(-2.0 * std::numbers::pi * green(z, w) <= std::log(std::norm(z.coord() - w.coord())) + 1e-12);
  });
}

TEST_CASE("radial ODE residual") {
  CHECK(std::abs(radial_ode_residual(1.0, 1e-4)) < 1e-5);
  CHECK(std::abs(radial_ode_residual(10.0, 1e-3)) < 1e-4);
  for (double r : {0.1, 0.5, 1.0, 2.0, 10.0}) CHECK(std::abs(radial_ode_residual(r, 1e-4)) < 1e-5);
  // Second order: halving h quarters the residual while truncation dominates.
  const double coarse = std::abs(radial_ode_residual(0.5, 0.04));
  const double fine = std::abs(radial_ode_residual(0.5, 0.02));
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
  CHECK_THROWS_AS(radial_ode_residual(0.0, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(radial_ode_residual(0.1, 0.05), std::invalid_argument);
}

TEST_CASE("Moebius invariance") {
  CHECK(mobius_invariance_gap(SpherePoint(0.3), SpherePoint(0.7, 0.1)) < 1e-12);
  CHECK(mobius_invariance_gap(SpherePoint(0.0), SpherePoint(0.4, -2.0)) == 0.0);
  CHECK(mobius_invariance_gap(SpherePoint(1.5, 0.5), SpherePoint(1.5, 0.5)) == 0.0);
  CHECK(mobius_invariance_gap(SpherePoint::infinity(), SpherePoint(0.4, 0.3)) < 1e-12);
  CHECK(mobius_invariance_gap(SpherePoint(0.4, 0.3), SpherePoint::infinity()) < 1e-12);
  CHECK(mobius_invariance_gap(SpherePoint(1.0), SpherePoint(-1.0)) < 1e-12);
  test::for_all(300, 29, [](test::Gen& g) {
    CHECK(mobius_invariance_gap(random_point(g, 3.0), random_point(g, 3.0)) < 1e-12);
  });
}

// Reference values from an independent 60-digit evaluation of the same
// quadrature (mpmath, level-k intervals, 8-point Gauss-Legendre per interval).
TEST_CASE("potential against high-precision reference") {
  const CantorParams params(3.0);
  auto at = [&](const SpherePoint& z, int depth) {
    QuadratureConfig cfg;
    cfg.depth = depth;
    return potential(z, params, cfg).value;
  };
  CHECK(at(SpherePoint::infinity(), 6) == doctest::Approx(-0.33474953386950834).epsilon(1e-12));
  CHECK(at(SpherePoint(0.5, 1.0), 4) == doctest::Approx(-0.94182849663282485).epsilon(1e-12));
  CHECK(at(SpherePoint(2.0), 3) == doctest::Approx(-1.2393490466617241).epsilon(1e-12));
  CHECK(at(SpherePoint(-1.0), 5) == doctest::Approx(-0.32305831478756922).epsilon(1e-12));

  const double expected[] = {-17.734807852097602, -27.797855411580481, -42.95437919132192, -65.720141081192636};
  for (int k = 4; k <= 7; ++k) {
    QuadratureConfig cfg;
    cfg.depth = k;
    CHECK(potential(CantorPoint{}, params, cfg).value == doctest::Approx(expected[k - 4]).epsilon(1e-12));
    // The numeric point 0 goes through the same addressed evaluation.
    CHECK(potential(SpherePoint(0.0), params, cfg).value == doctest::Approx(expected[k - 4]).epsilon(1e-12));
  }
}

TEST_CASE("potential at infinity lies in [-log 2, 0]") {
  QuadratureConfig cfg;
  cfg.depth = 6;
  const double value = potential(SpherePoint::infinity(), CantorParams(3.0), cfg).value;
  CHECK(value <= 0.0);
  CHECK(value >= -std::log(2.0) - 1e-12);
}

TEST_CASE("property: quadrature refinement and symmetry away from the set") {
  const CantorParams params(3.0);
  QuadratureConfig eight;
  eight.depth = 6;
  QuadratureConfig sixteen = eight;
  sixteen.nodes_per_interval = 16;
  test::for_all(40, 31, [&](test::Gen& g) {
    const SpherePoint z(g.real(-1.0, 2.0), g.coin() ? g.real(0.15, 2.0) : -g.real(0.15, 2.0));
    CHECK(std::abs(potential(z, params, eight).value - potential(z, params, sixteen).value) < 1e-6);
    // The set is symmetric about 1/2; the kernel's log(1 + |z|^2) term is not.
    const double x = g.real(0.0, 1.0);
    if (std::abs(x - 0.5) < 0.44) {
      const double left = potential(SpherePoint(x), params, eight).value + std::log1p(x * x);
      const double right = potential(SpherePoint(1.0 - x), params, eight).value + std::log1p((1.0 - x) * (1.0 - x));
      CHECK(left == doctest::Approx(right).epsilon(1e-12));
    }
  });
}

TEST_CASE("quadrature config validation and the -inf sentinel") {
  QuadratureConfig cfg;
  cfg.depth = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.depth = 3;
  cfg.nodes_per_interval = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.nodes_per_interval = 8;
  cfg.clamp_floor = -10.0;
  cfg.depth = 4;
  CHECK(potential(CantorPoint{}, CantorParams(3.0), cfg).is_neg_infinity());
  CHECK_THROWS_AS(potential(CantorPoint{3, 8}, CantorParams(3.0), cfg), std::invalid_argument);
}

TEST_CASE("upper bound fit at the left end of the set") {
  const CantorParams params(3.0);
  const BoundFit fit = upper_bound_fit(params, 4, 10);
  CHECK(fit.levels.size() == 7);
  CHECK(fit.strictly_decreasing());
  CHECK(fit.meets_contract());
  // Own interval and sibling clusters each contribute -2 (a/2)^k.
  CHECK(fit.slope == doctest::Approx(-4.0).epsilon(0.01));
  const BoundFit slower = upper_bound_fit(CantorParams(2.5), 4, 10);
  CHECK(slower.slope <= -1.8);
  CHECK_THROWS_AS(upper_bound_fit(params, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(upper_bound_fit(params, 0, 5), std::invalid_argument);
}

TEST_CASE("distance to the level-k set") {
  const CantorParams params(3.0);
  const CantorApprox k2 = build_level(params, 2);
  CHECK(distance_to_set(k2, SpherePoint(0.0)) == 0.0);
  CHECK(distance_to_set(k2, SpherePoint(-1.0)) == doctest::Approx(chordal_distance(SpherePoint(-1.0), SpherePoint(0.0))));
  // The chordal metric shrinks near 1, so the far gap end wins.
  CHECK(distance_to_set(k2, SpherePoint(0.5)) ==
        doctest::Approx(chordal_distance(SpherePoint(0.5), SpherePoint(k2.intervals[2].left))));
  CHECK(distance_to_set(k2, SpherePoint::infinity()) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("property: exact distance is below every sampled distance") {
  const CantorApprox k2 = build_level(CantorParams(3.0), 2);
  test::for_all(100, 37, [&](test::Gen& g) {
    const SpherePoint z = random_point(g, 3.0);
    const double exact = distance_to_set(k2, z);
    double sampled = 1.0;
    for (const auto& iv : k2.intervals) {
      for (int i = 0; i <= 200; ++i) {
        sampled = std::min(sampled, chordal_distance(z, SpherePoint(iv.left + (iv.right - iv.left) * i / 200.0)));
      }
    }
    CHECK(exact <= sampled + 1e-15);
    CHECK(exact >= sampled - 1e-4);
  });
}

TEST_CASE("lower bound constant") {
  const CantorParams params(3.0);
  QuadratureConfig cfg;
  cfg.depth = 8;
  std::vector<SpherePoint> ring;
  for (int i = 0; i < 16; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 16.0;
    ring.emplace_back(0.5 + std::cos(t), std::sin(t));
  }
  const double c8 = lower_bound_constant(params, cfg, ring);
  CHECK(std::isfinite(c8));
  const std::vector<SpherePoint> infinity{SpherePoint::infinity()};
  // The closest point of the set to infinity is 1, at chordal distance 1/sqrt(2).
  CHECK(lower_bound_constant(params, cfg, infinity) ==
        doctest::Approx(-std::log(2.0) - potential(SpherePoint::infinity(), params, cfg).value));
  const std::vector<SpherePoint> on_set{SpherePoint(0.0)};
  CHECK_THROWS_AS(lower_bound_constant(params, cfg, on_set), std::domain_error);
  CHECK_THROWS_AS(lower_bound_constant(params, cfg, std::vector<SpherePoint>{}), std::invalid_argument);
}
