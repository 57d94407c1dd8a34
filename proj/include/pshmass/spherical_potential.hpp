#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pshmass/cantor_measure.hpp"

namespace pshmass {

/// A point of the Riemann sphere in the affine chart w, or the point at infinity.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(double re, double im = 0.0);  // NOLINT(google-explicit-constructor)
  explicit SpherePoint(std::complex<double> z);

  static SpherePoint infinity();

  bool is_infinity() const { return infinite_; }
  /// Affine coordinate; throws std::domain_error at infinity.
  std::complex<double> coord() const;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::complex<double> z_{};
  bool infinite_ = false;
};

/// |z - w| / (sqrt(1 + |z|^2) sqrt(1 + |w|^2)), extended to infinity.
double chordal_distance(const SpherePoint& z, const SpherePoint& w);

/// Green function of the Laplacian of the round metric of volume one:
/// G(z, w) = -(1/pi) log chordal_distance(z, w). Returns +inf on the diagonal.
double green(const SpherePoint& z, const SpherePoint& w);

/// Central-difference residual of (2 pi)(1 + r^2)^2 (G'' + G'/r) / 4 - 1 for
/// the radial profile G(r) = G(0, r). Requires 0 < h <= r / 8.
double radial_ode_residual(double r, double h);

/// Image of w under the unitary Moebius map w -> (w - z) / (1 + conj(z) w).
SpherePoint mobius_recenter(const SpherePoint& z, const SpherePoint& w);

/// |G(z, w) - G(0, mobius_recenter(z, w))|, defined as 0 on the diagonal.
double mobius_invariance_gap(const SpherePoint& z, const SpherePoint& w);

struct QuadratureConfig {
  int depth = 8;
  int nodes_per_interval = 8;
  /// Values at or below this floor are reported as -inf.
  double clamp_floor = -1e9;

  void validate() const;
};

struct PotentialValue {
  double value = 0.0;

  bool is_neg_infinity() const { return std::isinf(value) && value < 0; }
};

/// p(z) = integral of log[|z - w|^2 / ((1 + |z|^2)(1 + |w|^2))] against the
/// level-`cfg.depth` Cantor measure, each interval integrated with a
/// Gauss-Legendre rule. Interval contributions are summed pairwise along the
/// construction tree, so the result does not depend on thread count or order.
PotentialValue potential(const SpherePoint& z, const CantorParams& params, const QuadratureConfig& cfg);
/// Same at an addressed point of the Cantor set; distances to nearby intervals
/// are resolved in log space even where the doubles coincide.
PotentialValue potential(const CantorPoint& x, const CantorParams& params, const QuadratureConfig& cfg);

struct BoundFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<int> levels;
  std::vector<double> values;

  bool strictly_decreasing() const;
  /// Slope at least 90% as steep as -2.
  bool meets_contract() const { return slope <= -2.0 * (1.0 - 0.1); }
};

/// Least-squares fit of p_{mu_k}(x0) against (a/2)^k over k_min..k_max.
BoundFit upper_bound_fit(const CantorParams& params, int k_min, int k_max, const CantorPoint& x0 = {},
                         int nodes_per_interval = 8);

/// Chordal distance from z to the level-k set (exact minimisation over each interval).
double distance_to_set(const CantorApprox& approx, const SpherePoint& z);

/// max over samples of 2 log dist(z, C_k) - p_{mu_k}(z). Throws std::domain_error
/// when a sample lies on the level-k set.
double lower_bound_constant(const CantorParams& params, const QuadratureConfig& cfg, std::span<const SpherePoint> samples);

}  // namespace pshmass
