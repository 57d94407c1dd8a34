#include "pshmass/spherical_potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pshmass/quadrature.hpp"

namespace pshmass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();


// log of (squared) chordal factor between a finite z and a real w, without the
// |z - w| part: log(1 + |z|^2) + log(1 + w^2).
double log_conformal_factor(double log_one_plus_z2, double w) { return log_one_plus_z2 + std::log1p(w * w); }

// log |u e^{log_abs} - t e^{log_len}|^2 with |u| = 1, evaluated at a common scale
// so that neither term has to be representable as a double.
double log_sq_gap(std::complex<double> unit, double log_abs, double log_len, double t) {
  const double scale = std::max(log_abs, log_len + std::log(t));
  const std::complex<double> v = unit * std::exp(log_abs - scale) - t * std::exp(log_len - scale);
  const double norm = std::norm(v);
  return norm == 0.0 ? -kInf : 2.0 * scale + std::log(norm);
}

class PotentialEvaluator {
 public:
  PotentialEvaluator(const CantorParams& params, const QuadratureConfig& cfg)
      : params_(params),
        rule_(gauss_legendre(cfg.nodes_per_interval)),
        depth_(cfg.depth),
        log_len_(params.log_length(cfg.depth)),
        len_(std::exp(log_len_)) {
    steps_.resize(depth_ + 1, 0.0);
    for (int j = 1; j <= depth_; ++j) steps_[j] = std::exp(params.log_step(j));
  }

  double at_infinity() const { return subtree_infinity(0, 0, 0.0); }

  double at_point(std::complex<double> z) {
    log_one_plus_z2_ = std::log1p(std::norm(z));
    return subtree_numeric(0, 0, 0.0, z);
  }

  double at_cantor_point(const CantorPoint& x) {
    const double value = x.value(params_);
    log_one_plus_z2_ = std::log1p(value * value);
    return subtree_addressed(0, 0, 0.0, x);
  }

 private:
  // Sum over the leaves below node (level, index) of the interval-averaged
  // integrand; `left` is the node's left end and `offset` = z - left.
  double subtree_numeric(int level, std::uint64_t index, double left, std::complex<double> offset) const {
    if (offset == std::complex<double>(0.0, 0.0)) {
      // z coincides with this left endpoint in double precision: from here on
      // treat it as that point of the Cantor set.
      return subtree_addressed(level, index, left, CantorPoint{level, index});
    }
    if (level == depth_) return leaf_numeric(left, offset);
    const int j = level + 1;
    return subtree_numeric(j, index * 2, left, offset) +
           subtree_numeric(j, index * 2 + 1, left + steps_[j], offset - steps_[j]);
  }

  double subtree_addressed(int level, std::uint64_t index, double left, const CantorPoint& x) const {
    if (level == depth_) {
      const SignedLog offset = offset_from_left(params_, x, depth_, index);
      return leaf_addressed(left, offset);
    }
    const int j = level + 1;
    return subtree_addressed(j, index * 2, left, x) + subtree_addressed(j, index * 2 + 1, left + steps_[j], x);
  }

  double subtree_infinity(int level, std::uint64_t index, double left) const {
    if (level == depth_) {
      double sum = 0.0;
      for (std::size_t m = 0; m < rule_.nodes.size(); ++m) {
        const double w = left + len_ * rule_.nodes[m];
        sum += rule_.weights[m] * -std::log1p(w * w);
      }
      return sum;
    }
    const int j = level + 1;
    return subtree_infinity(j, index * 2, left) + subtree_infinity(j, index * 2 + 1, left + steps_[j]);
  }

  double leaf_numeric(double left, std::complex<double> offset) const {
    const double log_abs = std::log(std::abs(offset));
    const std::complex<double> unit = offset / std::abs(offset);
    double sum = 0.0;
    for (std::size_t m = 0; m < rule_.nodes.size(); ++m) {
      const double t = rule_.nodes[m];
      const double w = left + len_ * t;
      sum += rule_.weights[m] * (log_sq_gap(unit, log_abs, log_len_, t) - log_conformal_factor(log_one_plus_z2_, w));
    }
    return sum;
  }

  double leaf_addressed(double left, const SignedLog& offset) const {
    double sum = 0.0;
    for (std::size_t m = 0; m < rule_.nodes.size(); ++m) {
      const double t = rule_.nodes[m];
      const double w = left + len_ * t;
      const double log_sq = offset.is_zero() ? 2.0 * (log_len_ + std::log(t))
                                             : log_sq_gap(static_cast<double>(offset.sign), offset.log_abs, log_len_, t);
      sum += rule_.weights[m] * (log_sq - log_conformal_factor(log_one_plus_z2_, w));
    }
    return sum;
  }

  const CantorParams& params_;
  const GaussLegendreRule& rule_;
  int depth_;
  double log_len_;
  double len_;
  double log_one_plus_z2_ = 0.0;
  std::vector<double> steps_;
};

PotentialValue finish(double leaf_sum, const QuadratureConfig& cfg) {
  const double value = std::ldexp(leaf_sum, -cfg.depth);
  if (std::isnan(value)) throw std::runtime_error("potential evaluation produced NaN");
  if (value <= cfg.clamp_floor) return {-kInf};
  return {value};
}

}  // namespace

SpherePoint::SpherePoint(double re, double im) : SpherePoint(std::complex<double>(re, im)) {}

SpherePoint::SpherePoint(std::complex<double> z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("finite sphere point needs finite coordinates; use SpherePoint::infinity()");
  }
}

SpherePoint SpherePoint::infinity() {
  SpherePoint p;
  p.infinite_ = true;
  return p;
}

std::complex<double> SpherePoint::coord() const {
  if (infinite_) throw std::domain_error("the point at infinity has no affine coordinate");
  return z_;
}

double chordal_distance(const SpherePoint& z, const SpherePoint& w) {
  if (z.is_infinity() && w.is_infinity()) return 0.0;
  if (z.is_infinity()) return 1.0 / std::sqrt(1.0 + std::norm(w.coord()));
  if (w.is_infinity()) return 1.0 / std::sqrt(1.0 + std::norm(z.coord()));
  const auto a = z.coord();
  const auto b = w.coord();
  return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

double green(const SpherePoint& z, const SpherePoint& w) {
  const double d = chordal_distance(z, w);
  if (d == 0.0) return kInf;
  return -std::log(d) / std::numbers::pi;
}

double radial_ode_residual(double r, double h) {
  if (!(r > 0.0)) throw std::invalid_argument("radial residual needs r > 0");
  if (!(h > 0.0) || h > r / 8.0) throw std::invalid_argument("finite-difference step must satisfy 0 < h <= r/8");
  // Increments G(r + t) - G(r) evaluated directly, so the stencil does not
  // subtract nearly equal values of G itself.
  const double s0 = 1.0 + r * r;
  auto increment = [&](double t) {
    return (std::log1p((2.0 * r * t + t * t) / s0) - 2.0 * std::log1p(t / r)) / (2.0 * std::numbers::pi);
  };
  const double up = increment(h);
  const double down = increment(-h);
  const double second = (up + down) / (h * h);
  const double first = (up - down) / (2.0 * h);
  const double s = 1.0 + r * r;
  return 2.0 * std::numbers::pi * s * s * (second + first / r) / 4.0 - 1.0;
}

SpherePoint mobius_recenter(const SpherePoint& z, const SpherePoint& w) {
  if (z == w) return SpherePoint(0.0);
  if (z.is_infinity()) {
    // Limit along the positive real axis; only |image| enters G(0, .).
    const auto b = w.coord();
    if (b == std::complex<double>(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(-1.0 / b);
  }
  const auto a = z.coord();
  if (w.is_infinity()) {
    if (a == std::complex<double>(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(1.0 / std::conj(a));
  }
  const auto b = w.coord();
  const auto den = 1.0 + std::conj(a) * b;
  if (den == std::complex<double>(0.0, 0.0)) return SpherePoint::infinity();
  return SpherePoint((b - a) / den);
}

double mobius_invariance_gap(const SpherePoint& z, const SpherePoint& w) {
  if (z == w) return 0.0;
  return std::abs(green(z, w) - green(SpherePoint(0.0), mobius_recenter(z, w)));
}

void QuadratureConfig::validate() const {
  if (depth < 1) throw std::invalid_argument("quadrature depth must be >= 1");
  if (nodes_per_interval < 1) throw std::invalid_argument("nodes per interval must be >= 1");
  if (std::isnan(clamp_floor)) throw std::invalid_argument("clamp floor must be a number");
}

PotentialValue potential(const SpherePoint& z, const CantorParams& params, const QuadratureConfig& cfg) {
  cfg.validate();
  params.require_depth(cfg.depth);
  PotentialEvaluator eval(params, cfg);
  const double sum = z.is_infinity() ? eval.at_infinity() : eval.at_point(z.coord());
  return finish(sum, cfg);
}

PotentialValue potential(const CantorPoint& x, const CantorParams& params, const QuadratureConfig& cfg) {
  cfg.validate();
  params.require_depth(cfg.depth);
  if (x.level < 0 || x.level > CantorParams::kHardMaxDepth || (x.level < 64 && (x.index >> x.level) != 0)) {
    throw std::invalid_argument("Cantor point address out of range");
  }
  PotentialEvaluator eval(params, cfg);
  return finish(eval.at_cantor_point(x), cfg);
}

bool BoundFit::strictly_decreasing() const {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

BoundFit upper_bound_fit(const CantorParams& params, int k_min, int k_max, const CantorPoint& x0,
                         int nodes_per_interval) {
  if (k_min < 1 || k_max - k_min + 1 < 3) throw std::invalid_argument("bound fit needs at least three levels >= 1");
  params.require_depth(k_max);
  BoundFit fit;
  std::vector<double> xs;
  for (int k = k_min; k <= k_max; ++k) {
    QuadratureConfig cfg;
    cfg.depth = k;
    cfg.nodes_per_interval = nodes_per_interval;
    fit.levels.push_back(k);
    fit.values.push_back(potential(x0, params, cfg).value);
    xs.push_back(std::pow(params.a() / 2.0, k));
  }
  const double count = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += fit.values[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (fit.values[i] - mean_y);
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

double distance_to_set(const CantorApprox& approx, const SpherePoint& z) {
  double best = kInf;
  if (z.is_infinity()) {
    for (const auto& iv : approx.intervals) {
      best = std::min({best, chordal_distance(z, SpherePoint(iv.left)), chordal_distance(z, SpherePoint(iv.right))});
    }
    return best;
  }
  // Critical points of |z - w|^2 / (1 + w^2) over real w solve
  // x w^2 + (1 - |z|^2) w - x = 0 with x = Re z.
  const auto c = z.coord();
  const double x = c.real();
  const double b = 1.0 - std::norm(c);
  std::vector<double> critical;
  if (x == 0.0) {
    if (b != 0.0) critical.push_back(0.0);
  } else {
    const double root = std::sqrt(b * b + 4.0 * x * x);
    const double q = -0.5 * (b + (b >= 0.0 ? root : -root));
    critical.push_back(q / x);
    critical.push_back(-x / q);
  }
  for (const auto& iv : approx.intervals) {
    if (c.real() >= iv.left && c.real() <= iv.right && c.imag() == 0.0) return 0.0;
    best = std::min({best, chordal_distance(z, SpherePoint(iv.left)), chordal_distance(z, SpherePoint(iv.right))});
    for (double w : critical) {
      if (w > iv.left && w < iv.right) best = std::min(best, chordal_distance(z, SpherePoint(w)));
    }
  }
  return best;
}

double lower_bound_constant(const CantorParams& params, const QuadratureConfig& cfg, std::span<const SpherePoint> samples) {
  if (samples.empty()) throw std::invalid_argument("lower bound constant needs at least one sample");
  const CantorApprox approx = build_level(params, cfg.depth);
  double constant = -kInf;
  for (const auto& z : samples) {
    const double dist = distance_to_set(approx, z);
    if (dist == 0.0) throw std::domain_error("sample lies on the level-" + std::to_string(cfg.depth) + " Cantor set");
    const PotentialValue p = potential(z, params, cfg);
    constant = std::max(constant, 2.0 * std::log(dist) - p.value);
  }
  return constant;
}

}  // namespace pshmass
