#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace pshmass {

/// A real number stored as sign and natural log of its magnitude.
///
/// Cantor interval lengths e^{-a^k} leave the double range after a handful of
/// levels, so offsets between nearby points are carried in this form.
struct SignedLog {
  int sign = 0;  // -1, 0 or +1
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLog zero() { return {}; }
  static SignedLog from_log(int sign, double log_abs) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return {};
    return {sign > 0 ? 1 : -1, log_abs};
  }
  static SignedLog from_double(double value) {
    if (value == 0.0) return {};
    return {value > 0 ? 1 : -1, std::log(std::abs(value))};
  }

  bool is_zero() const { return sign == 0; }
  SignedLog negated() const { return {-sign, log_abs}; }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

/// Sum of two log-encoded values, computed relative to the larger magnitude.
inline SignedLog add(const SignedLog& lhs, const SignedLog& rhs) {
  if (lhs.is_zero()) return rhs;
  if (rhs.is_zero()) return lhs;
  const double scale = std::max(lhs.log_abs, rhs.log_abs);
  const double sum = lhs.sign * std::exp(lhs.log_abs - scale) + rhs.sign * std::exp(rhs.log_abs - scale);
  if (sum == 0.0) return {};
  return {sum > 0 ? 1 : -1, scale + std::log(std::abs(sum))};
}

}  // namespace pshmass
