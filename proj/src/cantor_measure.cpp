#include "pshmass/cantor_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace pshmass {

namespace {

constexpr double kLog2 = std::numbers::ln2;

}  // namespace

CantorParams::CantorParams(double a, int k_max) : a_(a), k_max_(k_max) {
  if (!std::isfinite(a) || a <= 2.0) {
    throw std::invalid_argument("Cantor decay base must satisfy a > 2, got " + std::to_string(a));
  }
  if (k_max < 0 || k_max > kHardMaxDepth) {
    throw std::invalid_argument("Cantor depth bound must lie in [0, 62], got " + std::to_string(k_max));
  }
  // s_k in (1/3, 1)  <=>  log(1 - s_k) in (-inf, log(2/3)).
  const double upper = std::log(2.0 / 3.0);
  for (int k = 1; k <= k_max; ++k) {
    const double log_gap = log_one_minus_removal_ratio(k);
    if (!(log_gap < upper) || std::isinf(log_gap)) {
      throw std::invalid_argument("removal ratio s_" + std::to_string(k) + " = " + std::to_string(removal_ratio(k)) +
                                  " is outside (1/3, 1) or not representable");
    }
  }
}

double CantorParams::log_length(int k) const {
  if (k < 0) throw std::out_of_range("negative Cantor level");
  return k == 0 ? 0.0 : -std::pow(a_, k);
}

double CantorParams::log_one_minus_removal_ratio(int k) const {
  if (k < 1) throw std::out_of_range("removal ratio is defined for k >= 1");
  return kLog2 + log_length(k) - log_length(k - 1);
}

double CantorParams::removal_ratio(int k) const { return -std::expm1(log_one_minus_removal_ratio(k)); }

double CantorParams::log_step(int k) const {
  if (k < 1) throw std::out_of_range("step is defined for k >= 1");
  const double prev = log_length(k - 1);
  return prev + std::log(-std::expm1(log_length(k) - prev));
}

void CantorParams::require_depth(int k) const {
  if (k < 0 || k > k_max_) {
    throw std::out_of_range("Cantor level " + std::to_string(k) + " outside [0, " + std::to_string(k_max_) + "]");
  }
}

double CantorInterval::midpoint() const { return left + std::exp(log_length - kLog2); }

int CantorPoint::digit(int j) const { return interval_digit(index, level, j); }

double CantorPoint::value(const CantorParams& params) const {
  double x = 0.0;
  for (int j = 1; j <= level; ++j) {
    if (digit(j) != 0) x += std::exp(params.log_step(j));
  }
  return x;
}

CantorApprox build_level(const CantorParams& params, int k) {
  params.require_depth(k);
  // Children are anchored at their parent's ends: [L, L + l_j] and [R - l_j, R].
  // Nesting then holds exactly in floating point.
  std::vector<std::pair<double, double>> ends{{0.0, 1.0}};
  ends.reserve(std::size_t{1} << k);
  for (int j = 1; j <= k; ++j) {
    const double length = std::exp(params.log_length(j));
    std::vector<std::pair<double, double>> next;
    next.reserve(ends.size() * 2);
    for (const auto& [left, right] : ends) {
      next.emplace_back(left, left + length);
      next.emplace_back(right - length, right);
    }
    ends = std::move(next);
  }

  const double log_length = params.log_length(k);
  CantorApprox approx{params, k, {}, Dyadic::unit(static_cast<unsigned>(k))};
  approx.intervals.reserve(ends.size());
  for (const auto& [left, right] : ends) approx.intervals.push_back({left, right, log_length});
  return approx;
}

double removal_ratio(const CantorParams& params, int k) {
  const double s = params.removal_ratio(k);
  if (!(s > 1.0 / 3.0 && s <= 1.0)) throw std::domain_error("removal ratio out of range; invalid decay base");
  return s;
}

Dyadic cantor_cdf(const CantorApprox& approx, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("Cantor function argument outside [0, 1]");
  const auto& iv = approx.intervals;
  const auto it = std::upper_bound(iv.begin(), iv.end(), x, [](double value, const CantorInterval& interval) {
    return value < interval.right;
  });
  return approx.mass_per_interval.times(static_cast<std::uint64_t>(it - iv.begin()));
}

Dyadic cantor_cdf(const CantorParams& params, double x, int k) { return cantor_cdf(build_level(params, k), x); }

std::vector<CantorAtom> measure_atoms(const CantorParams& params, int k) {
  if (k < 1) throw std::out_of_range("measure atoms require level k >= 1");
  const CantorApprox approx = build_level(params, k);
  std::vector<CantorAtom> atoms;
  atoms.reserve(approx.intervals.size());
  for (const auto& interval : approx.intervals) atoms.push_back({interval.midpoint(), approx.mass_per_interval});
  return atoms;
}

Dyadic local_mass(const CantorApprox& approx, double x, double r, MembershipCheck check) {
  if (!(r > 0.0)) throw std::invalid_argument("local mass radius must be positive");
  if (check == MembershipCheck::require) {
    constexpr double tol = 1e-12;
    const bool inside = std::any_of(approx.intervals.begin(), approx.intervals.end(), [&](const CantorInterval& iv) {
      return x >= iv.left - tol && x <= iv.right + tol;
    });
    if (!inside) throw std::domain_error("point is not in the level-" + std::to_string(approx.level) + " Cantor set");
  }
  std::uint64_t count = 0;
  for (const auto& interval : approx.intervals) {
    if (std::abs(interval.midpoint() - x) <= r) ++count;
  }
  return approx.mass_per_interval.times(count);
}

Dyadic local_mass(const CantorApprox& approx, const CantorPoint& x, double log_radius) {
  const int k = approx.level;
  const SignedLog half_length = SignedLog::from_log(-1, approx.params.log_length(k) - kLog2);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < approx.intervals.size(); ++i) {
    const SignedLog to_mid = add(offset_from_left(approx.params, x, k, i), half_length);
    if (to_mid.is_zero() || to_mid.log_abs <= log_radius) ++count;
  }
  return approx.mass_per_interval.times(count);
}

double log_lebesgue_measure(const CantorParams& params, int k) {
  if (k < 0) throw std::out_of_range("negative Cantor level");
  return k * kLog2 + params.log_length(k);
}

double lebesgue_measure(const CantorParams& params, int k) { return std::exp(log_lebesgue_measure(params, k)); }

SignedLog offset_from_left(const CantorParams& params, const CantorPoint& x, int level, std::uint64_t index) {
  const int depth = std::max(x.level, level);
  SignedLog offset;
  bool diverged = false;
  for (int j = 1; j <= depth; ++j) {
    const int diff = x.digit(j) - interval_digit(index, level, j);
    if (diff == 0) continue;
    diverged = true;
    offset = add(offset, SignedLog::from_log(diff, params.log_step(j)));
  }
  return diverged ? offset : SignedLog::zero();
}

}  // namespace pshmass
