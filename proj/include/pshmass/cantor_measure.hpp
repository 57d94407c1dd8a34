#pragma once

#include <cstdint>
#include <vector>

#include "pshmass/logspace.hpp"
#include "pshmass/rational.hpp"

namespace pshmass {

/// Parameters of the generalized Cantor set with interval lengths l_k = e^{-a^k}.
///
/// With l_0 = 1, the removal ratio at stage k is s_k = 1 - 2 l_k / l_{k-1},
/// which is 1 - 2 e^{a^{k-1} - a^k} for k >= 2 and 1 - 2 e^{-a} for k = 1.
/// Construction requires a > 2; every s_k then exceeds 1/3, which is checked
/// up to k_max anyway.
///
/// Lengths underflow a double after a few levels (l_7 = e^{-2187} for a = 3),
/// so every length-like quantity has a log-space accessor.
class CantorParams {
 public:
  static constexpr int kDefaultMaxDepth = 12;
  static constexpr int kHardMaxDepth = 62;

  explicit CantorParams(double a, int k_max = kDefaultMaxDepth);

  double a() const { return a_; }
  int k_max() const { return k_max_; }

  /// log l_k = -a^k, with log l_0 = 0.
  double log_length(int k) const;
  /// s_k; rounds to 1.0 once 1 - s_k drops below double resolution.
  double removal_ratio(int k) const;
  /// log(1 - s_k) = log 2 + log l_k - log l_{k-1}, free of the cancellation in 1 - s_k.
  double log_one_minus_removal_ratio(int k) const;
  /// log(l_{k-1} - l_k): offset of the right child from the left end of its parent.
  double log_step(int k) const;

  /// Throws std::out_of_range unless 0 <= k <= k_max.
  void require_depth(int k) const;

 private:
  double a_;
  int k_max_;
};

struct CantorInterval {
  double left = 0.0;
  double right = 0.0;
  double log_length = 0.0;

  double midpoint() const;
};

/// Level-k approximation C(s_1, ..., s_k): 2^k intervals each of mass 2^{-k}.
struct CantorApprox {
  CantorParams params;
  int level = 0;
  std::vector<CantorInterval> intervals;
  Dyadic mass_per_interval;

  Dyadic total_mass() const { return mass_per_interval.times(intervals.size()); }
};

/// A point of the Cantor set addressed by the level-k interval whose left
/// endpoint it is. Left endpoints of surviving intervals never get removed, so
/// the address is exact where the double value of the point is not.
struct CantorPoint {
  int level = 0;
  std::uint64_t index = 0;

  /// Binary digit b_j (j >= 1) of the address; zero past the address level.
  int digit(int j) const;
  double value(const CantorParams& params) const;
};

struct CantorAtom {
  double point = 0.0;
  Dyadic mass;
};

enum class MembershipCheck { none, require };

CantorApprox build_level(const CantorParams& params, int k);

/// s_k for k >= 1.
double removal_ratio(const CantorParams& params, int k);

/// Left-continuous level-k distribution function: 2^{-k} times the number of
/// level-k intervals whose right end is <= x. Exact on gap points and at right
/// endpoints of level-k intervals.
Dyadic cantor_cdf(const CantorApprox& approx, double x);
Dyadic cantor_cdf(const CantorParams& params, double x, int k);

/// Interval midpoints carrying mass 2^{-k} each.
std::vector<CantorAtom> measure_atoms(const CantorParams& params, int k);

/// mu_k-mass of [x - r, x + r], counting each level-k interval by its midpoint.
Dyadic local_mass(const CantorApprox& approx, double x, double r, MembershipCheck check = MembershipCheck::none);
/// Same, for an addressed point of the set and a radius given as log r. Works
/// at depths where the radius and the interval geometry underflow a double.
Dyadic local_mass(const CantorApprox& approx, const CantorPoint& x, double log_radius);

/// Partial product prod_{j<=k} (1 - s_j) = 2^k l_k.
double lebesgue_measure(const CantorParams& params, int k);
double log_lebesgue_measure(const CantorParams& params, int k);

/// x - left(I) for the level-k interval I with the given index, in log space.
SignedLog offset_from_left(const CantorParams& params, const CantorPoint& x, int level, std::uint64_t index);

/// Level-j digit of a level-k interval index (1 <= j <= k).
inline int interval_digit(std::uint64_t index, int level, int j) {
  return j > level ? 0 : static_cast<int>((index >> (level - j)) & 1U);
}

}  // namespace pshmass
