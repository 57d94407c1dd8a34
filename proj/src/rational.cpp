#include "pshmass/rational.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>

namespace pshmass {

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

Integer pow(const Integer& base, unsigned exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Integer ceil(const Rational& value) {
  Integer result;
  mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

Dyadic::Dyadic(std::uint64_t numerator, unsigned exponent) : numerator_(numerator), exponent_(exponent) {
  if (exponent > kMaxExponent) throw std::out_of_range("dyadic exponent exceeds 62");
  normalize();
}

void Dyadic::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && (numerator_ & 1U) == 0) {
    numerator_ >>= 1U;
    --exponent_;
  }
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  const unsigned e = std::max(exponent_, other.exponent_);
  const std::uint64_t a = numerator_ << (e - exponent_);
  const std::uint64_t b = other.numerator_ << (e - other.exponent_);
  if (a > UINT64_MAX - b) throw std::overflow_error("dyadic sum overflows");
  numerator_ = a + b;
  exponent_ = e;
  normalize();
  return *this;
}

Dyadic Dyadic::times(std::uint64_t count) const {
  if (count != 0 && numerator_ > UINT64_MAX / count) throw std::overflow_error("dyadic product overflows");
  return Dyadic(numerator_ * count, exponent_);
}

bool operator<(const Dyadic& lhs, const Dyadic& rhs) {
  const unsigned e = std::max(lhs.exponent_, rhs.exponent_);
  const unsigned __int128 a = static_cast<unsigned __int128>(lhs.numerator_) << (e - lhs.exponent_);
  const unsigned __int128 b = static_cast<unsigned __int128>(rhs.numerator_) << (e - rhs.exponent_);
  return a < b;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(exponent_)); }

Rational Dyadic::to_rational() const {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent_);
  Rational r(Integer(std::to_string(numerator_)), den);
  r.canonicalize();
  return r;
}

std::string Dyadic::to_string() const { return std::to_string(numerator_) + "/" + std::to_string(std::uint64_t{1} << exponent_); }

}  // namespace pshmass
