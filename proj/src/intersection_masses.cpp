#include "pshmass/intersection_masses.hpp"

#include <cmath>
#include <utility>

namespace pshmass {

std::string to_string(Geometry geometry) {
  switch (geometry) {
    case Geometry::trivial:
      return "trivial";
    case Geometry::hyperplane:
      return "hyperplane";
    case Geometry::point:
      return "point";
    case Geometry::custom:
      return "custom";
  }
  return "unknown";
}

Geometry parse_geometry(const std::string& name) {
  if (name == "trivial") return Geometry::trivial;
  if (name == "hyperplane") return Geometry::hyperplane;
  if (name == "point") return Geometry::point;
  if (name == "custom") return Geometry::custom;
  throw std::invalid_argument("unknown geometry '" + name + "' (expected trivial, hyperplane, point or custom)");
}

IntersectionData::IntersectionData(Geometry geometry, int n, Rational c, std::vector<Rational> iota, bool allow_large_c)
    : geometry_(geometry), n_(n), c_(std::move(c)), iota_(std::move(iota)) {
  if (n_ < 2) throw std::invalid_argument("intersection data needs n >= 2");
  if (c_ < 0) throw std::invalid_argument("c must be nonnegative, got " + to_string(c_));
  if (!allow_large_c && c_ > 1) throw std::invalid_argument("c must lie in [0, 1], got " + to_string(c_));
  if (iota_.size() != static_cast<std::size_t>(n_ - 1)) {
    throw std::invalid_argument("intersection table needs n - 1 = " + std::to_string(n_ - 1) + " entries");
  }
  if (geometry_ == Geometry::custom) {
    for (const auto& v : iota_) {
      if (v < 0) throw std::invalid_argument("intersection numbers must be nonnegative");
    }
  }
}

IntersectionData IntersectionData::trivial(int n, const Rational& c, bool allow_c_above_one) {
  return IntersectionData(Geometry::trivial, n, c, std::vector<Rational>(n > 1 ? n - 1 : 0, Rational(0)),
                          allow_c_above_one);
}

IntersectionData IntersectionData::hyperplane(int n, const Rational& c, bool allow_c_above_one) {
  std::vector<Rational> iota;
  for (int p = 0; p + 2 <= n; ++p) iota.push_back(pow(Rational(1 - c), p));
  return IntersectionData(Geometry::hyperplane, n, c, std::move(iota), allow_c_above_one);
}

IntersectionData IntersectionData::point(int n, const Rational& c, bool allow_c_above_one) {
  std::vector<Rational> iota(n > 1 ? n - 1 : 0, Rational(0));
  if (n >= 2) iota.back() = pow(c, n - 2);
  return IntersectionData(Geometry::point, n, c, std::move(iota), allow_c_above_one);
}

IntersectionData IntersectionData::custom(int n, const Rational& c, std::vector<Rational> iota, bool allow_c_above_one) {
  return IntersectionData(Geometry::custom, n, c, std::move(iota), allow_c_above_one);
}

IntersectionData IntersectionData::make(Geometry geometry, int n, const Rational& c, std::vector<Rational> iota,
                                        bool allow_c_above_one) {
  if (geometry != Geometry::custom && !iota.empty()) {
    throw std::invalid_argument("an intersection table is only accepted for the custom geometry");
  }
  switch (geometry) {
    case Geometry::trivial:
      return trivial(n, c, allow_c_above_one);
    case Geometry::hyperplane:
      return hyperplane(n, c, allow_c_above_one);
    case Geometry::point:
      return point(n, c, allow_c_above_one);
    case Geometry::custom:
      break;
  }
  return custom(n, c, std::move(iota), allow_c_above_one);
}

Rational residual_mass(const IntersectionData& data) {
  const int n = data.n();
  Rational sum = 0;
  for (int p = 0; p <= n - 2; ++p) {
    const Rational weight = pow(Integer(2), n - 1 - p) - 1;
    sum += weight * data.iota()[p];
  }
  return 1 + data.c() * sum;
}

Rational mass_via_recursion(const IntersectionData& data, const Integer& d) {
  if (d < 1) throw std::invalid_argument("recursion scale d must be >= 1");
  const Rational cd = data.c() * d;
  if (cd.get_den() != 1) throw std::invalid_argument("c * d must be an integer, got " + to_string(cd));
  const int n = data.n();
  const Rational dn = pow(Rational(d), n);
  Rational a = dn;
  Rational b = 0;
  for (int k = 1; k <= n - 1; ++k) {
    const Rational next_a = a + b;
    const Rational next_b = 2 * b + dn * data.c() * data.iota()[k - 1];
    a = next_a;
    b = next_b;
  }
  return (a + b) / dn;
}

Rational mass_via_recursion(const IntersectionData& data) { return mass_via_recursion(data, data.c().get_den()); }

FullMassDefect full_mass_defect(const IntersectionData& data) {
  Rational sum = 0;
  for (const auto& v : data.iota()) sum += v;
  FullMassDefect out;
  out.delta = data.c() * sum;
  out.volume = 1 - out.delta;
  return out;
}

bool is_full_mass(const IntersectionData& data) {
  const bool no_defect = full_mass_defect(data).delta == 0;
  const bool unit_mass = residual_mass(data) == 1;
  if (no_defect != unit_mass) {
    throw CrossCheckFailure("full-mass criterion disagrees with the residual mass for " + to_string(data.geometry()));
  }
  return no_defect;
}

CrossCheckReport cross_check(Family family, int n, int p, int q, int grid_resolution, DeskGuard guard) {
  if (p < 1 || p > q) throw std::invalid_argument("cross check needs 1 <= p <= q");
  CrossCheckReport report;
  report.family = family;
  report.n = n;
  report.p = p;
  report.q = q;
  report.c = Rational(p, q);
  report.c.canonicalize();

  const IntersectionData data = family == Family::hyperplane ? IntersectionData::hyperplane(n, report.c)
                                                             : IntersectionData::point(n, report.c);
  report.residual_mass = residual_mass(data);
  report.recursion_mass = mass_via_recursion(data, Integer(q));
  report.mult_closed = multiplicity_closed_form(family, n, p, q);
  report.scaled_mult = Rational(report.mult_closed) / pow(Rational(q), n);

  if (report.residual_mass != report.scaled_mult) {
    throw CrossCheckFailure("residual mass " + to_string(report.residual_mass) + " != q^-n mult " +
                            to_string(report.scaled_mult) + " for " + to_string(family));
  }
  if (report.recursion_mass != report.residual_mass) {
    throw CrossCheckFailure("recursion mass " + to_string(report.recursion_mass) + " != residual mass " +
                            to_string(report.residual_mass));
  }
  if (grid_resolution > 0) {
    const MonomialIdeal ideal = family_ideal(family, n, p, q, guard);
    report.grid_estimate = covolume_grid(ideal, grid_resolution);
    report.grid_scaled = *report.grid_estimate / std::pow(static_cast<double>(q), n);
  }
  return report;
}

}  // namespace pshmass
