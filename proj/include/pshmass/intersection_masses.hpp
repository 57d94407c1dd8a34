#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pshmass/monomial_multiplicity.hpp"
#include "pshmass/rational.hpp"

namespace pshmass {

enum class Geometry { trivial, hyperplane, point, custom };

std::string to_string(Geometry geometry);
Geometry parse_geometry(const std::string& name);

/// Raised when two evaluation routes that must agree exactly do not.
class CrossCheckFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Intersection numbers iota(p) = (H - cE)^p . H^{n-2-p} . E, p = 0..n-2, on a
/// blowup of P^{n-1}, together with n and the exponent c.
class IntersectionData {
 public:
  // c must lie in [0, 1] unless allow_c_above_one is set; beyond 1 the tables
  // are evaluated formally, without the psh-metric reading.
  static IntersectionData trivial(int n, const Rational& c, bool allow_c_above_one = false);
  /// E = H, so iota(p) = (1 - c)^p.
  static IntersectionData hyperplane(int n, const Rational& c, bool allow_c_above_one = false);
  /// Blowup of a point: only iota(n-2) = c^{n-2} survives.
  static IntersectionData point(int n, const Rational& c, bool allow_c_above_one = false);
  /// User table; validated only for length n - 1 and nonnegativity.
  static IntersectionData custom(int n, const Rational& c, std::vector<Rational> iota, bool allow_c_above_one = false);
  static IntersectionData make(Geometry geometry, int n, const Rational& c, std::vector<Rational> iota = {},
                               bool allow_c_above_one = false);

  int n() const { return n_; }
  const Rational& c() const { return c_; }
  const std::vector<Rational>& iota() const { return iota_; }
  Geometry geometry() const { return geometry_; }

 private:
  IntersectionData(Geometry geometry, int n, Rational c, std::vector<Rational> iota, bool allow_large_c);

  Geometry geometry_;
  int n_;
  Rational c_;
  std::vector<Rational> iota_;
};

/// e_n = 1 + c * sum_{p=0}^{n-2} (2^{n-1-p} - 1) iota(p).
Rational residual_mass(const IntersectionData& data);

/// Runs a_k = a_{k-1} + b_{k-1}, b_k = 2 b_{k-1} + d^n c iota(k-1) from
/// a_0 = d^n, b_0 = 0 and returns d^{-n}(a_{n-1} + b_{n-1}). Requires c d integral.
Rational mass_via_recursion(const IntersectionData& data, const Integer& d);
/// d defaults to the denominator of c.
Rational mass_via_recursion(const IntersectionData& data);

struct FullMassDefect {
  Rational delta;   // c * sum_p iota(p)
  Rational volume;  // 1 - delta, the non-pluripolar volume
};

FullMassDefect full_mass_defect(const IntersectionData& data);

/// delta == 0; throws CrossCheckFailure if that disagrees with residual_mass == 1.
bool is_full_mass(const IntersectionData& data);

struct CrossCheckReport {
  Family family;
  int n = 0;
  int p = 0;
  int q = 0;
  Rational c;
  Rational residual_mass;
  Rational recursion_mass;
  Integer mult_closed;
  Rational scaled_mult;  // q^{-n} mult
  std::optional<double> grid_estimate;
  std::optional<double> grid_scaled;  // q^{-n} times the grid estimate
};

/// Asserts residual_mass(c = p/q) == q^{-n} mult == recursion mass exactly;
/// throws CrossCheckFailure otherwise. A positive grid_resolution adds the
/// covolume-grid estimate of mult.
CrossCheckReport cross_check(Family family, int n, int p, int q, int grid_resolution = 0, DeskGuard guard = {});

}  // namespace pshmass
