#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pshmass {

/// Exact rational number. All mass formulas are evaluated in this type.
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "num/den" form; integers keep the "/1" suffix.
std::string to_string(const Rational& value);

/// Parses "p/q", "-p/q" or a bare integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned exponent);
Integer pow(const Integer& base, unsigned exponent);

/// Smallest integer >= value.
Integer ceil(const Rational& value);

/// A dyadic rational numerator / 2^exponent kept in lowest terms.
///
/// Cantor-measure masses are always of this form. Numerator arithmetic is
/// exact, and totals such as 2^k * 2^{-k} compare equal to one.
class Dyadic {
 public:
  static constexpr unsigned kMaxExponent = 62;

  constexpr Dyadic() = default;
  Dyadic(std::uint64_t numerator, unsigned exponent);

  static Dyadic one() { return Dyadic(1, 0); }
  /// 2^{-exponent}
  static Dyadic unit(unsigned exponent) { return Dyadic(1, exponent); }

  std::uint64_t numerator() const { return numerator_; }
  unsigned exponent() const { return exponent_; }

  Dyadic& operator+=(const Dyadic& other);
  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
  /// Multiplies by an integer count.
  Dyadic times(std::uint64_t count) const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend bool operator<(const Dyadic& lhs, const Dyadic& rhs);
  friend bool operator<=(const Dyadic& lhs, const Dyadic& rhs) { return !(rhs < lhs); }

  double to_double() const;
  Rational to_rational() const;
  std::string to_string() const;

 private:
  void normalize();

  std::uint64_t numerator_ = 0;
  unsigned exponent_ = 0;
};

}  // namespace pshmass
