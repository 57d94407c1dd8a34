#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "pshmass/rational.hpp"

namespace pshmass {

/// Exponent vector of a monomial z^v in n variables.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<unsigned> entries) : entries_(std::move(entries)) {}
  ExponentVector(std::initializer_list<unsigned> entries) : entries_(entries) {}

  std::size_t size() const { return entries_.size(); }
  unsigned operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<unsigned>& entries() const { return entries_; }
  unsigned total_degree() const;

  /// Componentwise <=, i.e. z^this divides z^other.
  bool divides(const ExponentVector& other) const;

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<unsigned> entries_;
};

/// Size limits for enumeration-heavy operations (n <= 4, q <= 8 by default).
struct DeskGuard {
  bool allow_large = false;

  void check(int n, int q) const;
};

/// m-primary monomial ideal in n >= 2 variables, stored by its minimal
/// generators (the corners of its staircase).
class MonomialIdeal {
 public:
  /// Minimalizes the generators; throws std::invalid_argument on dimension
  /// mismatch or when some axis has no pure power (ideal not m-primary).
  MonomialIdeal(int n, std::vector<ExponentVector> generators);

  int dimension() const { return n_; }
  const std::vector<ExponentVector>& generators() const { return generators_; }
  /// Smallest N with z_axis^N in the ideal.
  unsigned pure_power_degree(int axis) const { return pure_powers_[axis]; }
  unsigned max_pure_power() const;

 private:
  int n_;
  std::vector<ExponentVector> generators_;
  std::vector<unsigned> pure_powers_;
};

enum class Family { hyperplane, point };

std::string to_string(Family family);
/// Accepts "hyperplane" or "point"; throws std::invalid_argument otherwise.
Family parse_family(const std::string& name);

/// Drops duplicates and generators divisible by another generator.
std::vector<ExponentVector> minimalize(std::vector<ExponentVector> generators);

/// All exponent vectors of total degree d supported on the first `support` variables.
std::vector<ExponentVector> monomials_of_degree(int n, unsigned d, int support);

MonomialIdeal power_of_maximal(int n, unsigned d);
/// <z_1^p> m^{q-p} + m^{2q}
MonomialIdeal family_hyperplane(int n, int p, int q, DeskGuard guard = {});
/// <z_1, ..., z_{n-1}>^p m^{q-p} + m^{2q}
MonomialIdeal family_point(int n, int p, int q, DeskGuard guard = {});
MonomialIdeal family_ideal(Family family, int n, int p, int q, DeskGuard guard = {});

bool membership(const MonomialIdeal& ideal, const ExponentVector& v);

/// Number of standard monomials (lattice points outside the staircase).
std::uint64_t colength(const MonomialIdeal& ideal, DeskGuard guard = {});

/// Hilbert-Samuel multiplicity of the family ideal, from its closed form.
Integer multiplicity_closed_form(Family family, int n, int p, int q);

/// Whether x lies in conv(generators) + R^n_{>=0}, decided by an exact
/// rational feasibility problem (no floating point).
bool newton_membership(const MonomialIdeal& ideal, std::span<const Rational> x);

/// n! times the volume of the orthant minus the Newton polyhedron, estimated by
/// counting centres of the R^n grid cells of [0, B]^n that miss the polyhedron
/// (B = largest pure-power degree). Requires R >= 16.
double covolume_grid(const MonomialIdeal& ideal, int resolution);

struct CovolumeEstimate {
  double estimate = 0.0;
  double refined = 0.0;    // at twice the resolution
  double error_bar = 0.0;  // |refined - estimate|
};

CovolumeEstimate covolume_with_error(const MonomialIdeal& ideal, int resolution);

}  // namespace pshmass
