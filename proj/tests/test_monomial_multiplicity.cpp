#include "doctest.h"
#include "pshmass/monomial_multiplicity.hpp"
#include "property.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

using namespace pshmass;

namespace {

using Gens = std::vector<ExponentVector>;

// Generators as a sorted set for order-insensitive comparison.
std::set<std::vector<unsigned>> as_set(const Gens& gens) {
  std::set<std::vector<unsigned>> out;
  for (const auto& g : gens) out.insert(g.entries());
  return out;
}

// Direct staircase count over the pure-power box.
std::uint64_t brute_colength(const MonomialIdeal& ideal) {
  const int n = ideal.dimension();
  std::vector<unsigned> v(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool member = false;
    for (const auto& g : ideal.generators()) {
      bool below = true;
      for (int i = 0; i < n; ++i) below = below && g[i] <= v[i];
      member = member || below;
    }
    count += member ? 0 : 1;
    int axis = n - 1;
    while (axis >= 0 && ++v[axis] > ideal.max_pure_power()) v[axis--] = 0;
    if (axis < 0) return count;
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Rational> point(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("family generators against hand-minimalized expansions") {
  CHECK(as_set(family_hyperplane(2, 1, 2).generators()) == as_set({{2, 0}, {1, 1}, {0, 4}}));
  CHECK(as_set(family_hyperplane(2, 1, 1).generators()) == as_set({{1, 0}, {0, 2}}));
  CHECK(as_set(family_point(2, 1, 2).generators()) == as_set(family_hyperplane(2, 1, 2).generators()));
  CHECK(as_set(family_point(3, 1, 2).generators()) ==
        as_set({{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 4}}));
  CHECK_THROWS_AS(family_hyperplane(2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(family_point(1, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(family_point(5, 1, 2), std::invalid_argument);
  CHECK_NOTHROW(family_point(5, 1, 2, DeskGuard{true}));
  CHECK_THROWS_AS(family_hyperplane(2, 1, 9), std::invalid_argument);
}

TEST_CASE("ideal construction") {
  const MonomialIdeal ideal(2, {{1, 0}, {0, 2}, {1, 1}, {1, 0}});
  CHECK(ideal.generators().size() == 2);
  CHECK(ideal.pure_power_degree(0) == 1);
  CHECK(ideal.pure_power_degree(1) == 2);
  CHECK_THROWS_AS(MonomialIdeal(2, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialIdeal(2, {{1, 0, 0}}), std::invalid_argument);
  CHECK(monomials_of_degree(3, 2, 3).size() == 6);
  CHECK(monomials_of_degree(3, 2, 2).size() == 3);
}

TEST_CASE("membership and colength") {
  const MonomialIdeal ideal(2, {{1, 0}, {0, 2}});
  CHECK_FALSE(membership(ideal, {0, 1}));
  CHECK(membership(ideal, {1, 0}));
  CHECK(membership(power_of_maximal(2, 2), {1, 1}));
  CHECK_THROWS_AS(membership(ideal, {1, 0, 0}), std::invalid_argument);
  CHECK(colength(power_of_maximal(3, 1)) == 1);
  CHECK(colength(ideal) == 2);
  for (int n = 2; n <= 4; ++n) {
    for (unsigned d = 1; d <= 5; ++d) CHECK(colength(power_of_maximal(n, d)) == binomial(d - 1 + n, n));
  }
  // Counts from an independent enumeration script.
  CHECK(colength(family_hyperplane(2, 1, 2)) == 5);
  CHECK(colength(family_point(3, 1, 2)) == 6);
  CHECK(colength(family_hyperplane(3, 1, 2)) == 11);
  CHECK(colength(family_point(2, 1, 3)) == 9);
  CHECK(colength(family_hyperplane(2, 2, 3)) == 12);
}

TEST_CASE("closed-form multiplicities") {
  CHECK(multiplicity_closed_form(Family::hyperplane, 2, 1, 2) == 6);
  CHECK(multiplicity_closed_form(Family::point, 3, 1, 2) == 10);
  for (int n = 2; n <= 4; ++n) {
    // (q - p)^k vanishes for k >= 1, leaving 2^{n-1}.
    CHECK(multiplicity_closed_form(Family::hyperplane, n, 1, 1) == (1 << (n - 1)));
    CHECK(multiplicity_closed_form(Family::point, n, 1, 1) == 2);
  }
  CHECK(to_string(Family::point) == "point");
  CHECK(parse_family("hyperplane") == Family::hyperplane);
  CHECK_THROWS_AS(parse_family("line"), std::invalid_argument);
}

TEST_CASE("Newton membership") {
  const MonomialIdeal square(2, {{2, 0}, {0, 2}});
  CHECK(newton_membership(square, point({1, 1})));
  CHECK_FALSE(newton_membership(square, point({0, 0})));
  CHECK_FALSE(newton_membership(square, std::vector<Rational>{Rational(9, 10), Rational(1)}));
  const MonomialIdeal ideal = family_point(3, 1, 2);
  for (const auto& g : ideal.generators()) {
    std::vector<Rational> x(g.entries().begin(), g.entries().end());
    CHECK(newton_membership(ideal, x));
  }
  CHECK_THROWS_AS(newton_membership(square, point({1})), std::invalid_argument);
  CHECK_THROWS_AS(newton_membership(square, point({-1, 3})), std::invalid_argument);
}

TEST_CASE("property: Newton membership is monotone and contains the staircase") {
  test::for_all(300, 41, [](test::Gen& g) {
    const int n = g.integer(2, 3);
    const int q = g.integer(1, 4);
    const int p = g.integer(1, q);
    const MonomialIdeal ideal = g.coin() ? family_hyperplane(n, p, q) : family_point(n, p, q);
    std::vector<unsigned> lattice(n);
    std::vector<Rational> x(n);
    std::vector<Rational> y(n);
    for (int i = 0; i < n; ++i) {
      lattice[i] = static_cast<unsigned>(g.integer(0, 2 * q));
      x[i] = Rational(g.integer(0, 8 * q), 4);
      y[i] = x[i] + Rational(g.integer(0, 8), 4);
    }
    if (membership(ideal, ExponentVector(lattice))) {
      std::vector<Rational> as_rational(lattice.begin(), lattice.end());
      CHECK(newton_membership(ideal, as_rational));
    }
    if (newton_membership(ideal, x)) CHECK(newton_membership(ideal, y));
  });
}

TEST_CASE("property: minimalization is idempotent and inclusion reverses colength") {
  test::for_all(100, 43, [](test::Gen& g) {
    const int n = g.integer(2, 3);
    Gens gens;
    for (int axis = 0; axis < n; ++axis) {
      std::vector<unsigned> v(n, 0);
      v[axis] = static_cast<unsigned>(g.integer(1, 6));
      gens.emplace_back(v);
    }
    const int extra = g.integer(0, 5);
    for (int e = 0; e < extra; ++e) {
      std::vector<unsigned> v(n);
      for (auto& entry : v) entry = static_cast<unsigned>(g.integer(0, 4));
      gens.emplace_back(v);
    }
    const auto once = minimalize(gens);
    CHECK(minimalize(once) == once);
    const MonomialIdeal big(n, gens);
    CHECK(colength(big) == brute_colength(big));
    // Multiplying every generator by z_1 gives a smaller ideal.
    Gens shifted = once;
    for (auto& s : shifted) {
      auto v = s.entries();
      ++v[0];
      s = ExponentVector(v);
    }
    for (int axis = 1; axis < n; ++axis) {
      std::vector<unsigned> v(n, 0);
      v[axis] = big.pure_power_degree(axis);
      shifted.emplace_back(v);
    }
    const MonomialIdeal small(n, shifted);
    CHECK(colength(small) >= colength(big));
  });
}

TEST_CASE("grid covolume oracle") {
  CHECK(covolume_grid(family_hyperplane(2, 1, 2), 256) == doctest::Approx(6.0).epsilon(0.02));
  CHECK(covolume_grid(family_point(3, 1, 2), 96) == doctest::Approx(10.0).epsilon(0.03));
  for (unsigned d = 1; d <= 4; ++d) CHECK(covolume_grid(power_of_maximal(2, d), 128) == doctest::Approx(d * d).epsilon(0.02));
  // Exact Newton polygon of <z1^2, z2^2>: the triangle below x + y = 2, area 2, times 2!.
  CHECK(covolume_grid(MonomialIdeal(2, {{2, 0}, {0, 2}}), 64) == doctest::Approx(4.0).epsilon(0.02));
  CHECK_THROWS_AS(covolume_grid(power_of_maximal(2, 1), 8), std::invalid_argument);
  const CovolumeEstimate est = covolume_with_error(family_hyperplane(2, 1, 1), 64);
  CHECK(est.refined == doctest::Approx(2.0).epsilon(0.02));
  CHECK(est.error_bar == doctest::Approx(std::abs(est.refined - est.estimate)));
}

TEST_CASE("property: grid covolume tracks the closed form and grows with the ideal's complement") {
  for (int q = 1; q <= 3; ++q) {
    for (int p = 1; p <= q; ++p) {
      const double closed_h = multiplicity_closed_form(Family::hyperplane, 2, p, q).get_d();
      const double closed_p = multiplicity_closed_form(Family::point, 3, p, q).get_d();
      CHECK(covolume_grid(family_hyperplane(2, p, q), 128) == doctest::Approx(closed_h).epsilon(0.03));
      CHECK(covolume_grid(family_point(3, p, q), 48) == doctest::Approx(closed_p).epsilon(0.06));
    }
  }
  CHECK(covolume_grid(power_of_maximal(2, 3), 96) >= covolume_grid(power_of_maximal(2, 2), 96));
}
