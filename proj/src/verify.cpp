#include "pshmass/verify.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pshmass/approximation.hpp"
#include "pshmass/intersection_masses.hpp"
#include "pshmass/monomial_multiplicity.hpp"
#include "pshmass/serialize.hpp"

namespace pshmass {

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Accumulates failures; the first few messages are kept for the summary line.
class Checker {
 public:
  void require(bool condition, const std::string& message) {
    if (condition) return;
    ++failures_;
    if (failures_ <= 3) messages_ << (failures_ > 1 ? "; " : "") << message;
  }
  void note(const std::string& text) { notes_ << (notes_.tellp() > 0 ? ", " : "") << text; }

  Outcome outcome() const {
    Outcome out;
    out.passed = failures_ == 0;
    out.detail = out.passed ? notes_.str() : std::to_string(failures_) + " failure(s): " + messages_.str();
    return out;
  }

 private:
  int failures_ = 0;
  std::ostringstream messages_;
  std::ostringstream notes_;
};

Outcome counterexample_gap() {
  Checker check;
  const MassReport report = counterexample_report(PshFamily::cantor2(), 100);
  check.require(report.true_mass == 2, "e_2(phi) = " + to_string(report.true_mass));
  check.require(report.sequence.has_value() && report.sequence->values.size() == 100, "sequence length");
  if (report.sequence) {
    for (const auto& [m, mass] : report.sequence->values) {
      Rational expected(static_cast<long>(m - 1) * (m - 1), static_cast<long>(m) * m);
      expected.canonicalize();
      check.require(mass == expected, "e_2(phi_" + std::to_string(m) + ") = " + to_string(mass));
    }
  }
  check.require(report.limit && *report.limit == 1, "limit");
  check.require(report.gap && *report.gap == 1, "gap");
  check.require(report.verdict == kVerdictRefuted, "verdict " + report.verdict);
  check.note("e_2(phi)=" + to_string(report.true_mass) + ", gap=" + (report.gap ? to_string(*report.gap) : "-"));
  return check.outcome();
}

Outcome mass_multiplicity_identity() {
  Checker check;
  int cases = 0;
  for (Family family : {Family::hyperplane, Family::point}) {
    for (int n = 2; n <= 4; ++n) {
      for (int q = 1; q <= 6; ++q) {
        for (int p = 1; p <= q; ++p) {
          Rational c(p, q);
          c.canonicalize();
          const IntersectionData data =
              family == Family::hyperplane ? IntersectionData::hyperplane(n, c) : IntersectionData::point(n, c);
          const Rational mass = residual_mass(data);
          const Rational scaled = Rational(multiplicity_closed_form(family, n, p, q)) / pow(Rational(q), n);
          const Rational via_recursion = mass_via_recursion(data, Integer(q));
          const std::string tag = to_string(family) + " n=" + std::to_string(n) + " p/q=" + std::to_string(p) + "/" +
                                  std::to_string(q);
          check.require(mass == scaled, tag + ": " + to_string(mass) + " != " + to_string(scaled));
          check.require(via_recursion == mass, tag + ": recursion " + to_string(via_recursion));
          ++cases;
        }
      }
    }
  }
  check.note(std::to_string(cases) + " cases exact");
  return check.outcome();
}

Outcome grid_oracle(Profile profile) {
  Checker check;
  auto within = [&](const std::string& tag, double estimate, double target, double rel_tol) {
    const double rel = std::abs(estimate - target) / target;
    check.require(rel < rel_tol, tag + " rel_err " + format_double(rel));
    check.note(tag + " " + format_double(estimate));
  };
  within("hyperplane(2,1,2)@256", covolume_grid(family_hyperplane(2, 1, 2), 256), 6.0, 0.02);
  within("point(3,1,2)@96", covolume_grid(family_point(3, 1, 2), 96), 10.0, 0.03);
  for (int n = 2; n <= 3; ++n) {
    for (unsigned d = 1; d <= 4; ++d) {
      within("m^" + std::to_string(d) + "(n=" + std::to_string(n) + ")@128", covolume_grid(power_of_maximal(n, d), 128),
             std::pow(static_cast<double>(d), n), 0.02);
    }
  }
  if (profile == Profile::full) {
    within("hyperplane(2,1,2)@512", covolume_grid(family_hyperplane(2, 1, 2), 512), 6.0, 0.02);
    within("point(3,1,2)@192", covolume_grid(family_point(3, 1, 2), 192), 10.0, 0.03);
  }
  return check.outcome();
}

Outcome green_function() {
  Checker check;
  double worst_residual = 0.0;
  for (double r : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double residual = std::abs(radial_ode_residual(r, 1e-4));
    worst_residual = std::max(worst_residual, residual);
    check.require(residual < 1e-5, "residual at r=" + format_double(r) + " is " + format_double(residual));
  }
  std::mt19937_64 rng(20200101);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  double worst_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpherePoint z(coord(rng), coord(rng));
    const SpherePoint w(coord(rng), coord(rng));
    const double gap = mobius_invariance_gap(z, w);
    worst_gap = std::max(worst_gap, gap);
    check.require(gap < 1e-12, "Moebius gap " + format_double(gap));
  }
  check.note("max residual " + format_double(worst_residual) + ", max gap " + format_double(worst_gap));
  return check.outcome();
}

Outcome polarity_bound(Profile profile) {
  Checker check;
  const CantorParams params(3.0);
  const int k_max = profile == Profile::full ? 12 : 10;
  const BoundFit fit = upper_bound_fit(params, 4, k_max, CantorPoint{}, 8);
  check.require(fit.slope >= -2.2 && fit.slope <= -1.8, "slope " + format_double(fit.slope) + " outside [-2.2, -1.8]");
  check.require(fit.strictly_decreasing(), "values not strictly decreasing");
  check.note("slope " + format_double(fit.slope) + " over k=4.." + std::to_string(k_max));
  return check.outcome();
}

Outcome lower_bound() {
  Checker check;
  const CantorParams params(3.0);
  const auto samples = sample_points_near_set(params, {8, 10}, 200, 1e-3, 1.0, 7);
  check.require(samples.size() == 200, "only " + std::to_string(samples.size()) + " samples");
  QuadratureConfig cfg;
  cfg.depth = 8;
  const double c8 = lower_bound_constant(params, cfg, samples);
  cfg.depth = 10;
  const double c10 = lower_bound_constant(params, cfg, samples);
  check.require(std::isfinite(c8) && std::isfinite(c10), "constant not finite");
  const double change = std::abs(c10 - c8) / std::abs(c8);
  check.require(change < 0.2, "relative change " + format_double(change));
  check.note("C8=" + format_double(c8) + ", C10=" + format_double(c10));
  return check.outcome();
}

Outcome measure_sanity() {
  Checker check;
  const CantorParams params(3.0);
  for (int k = 0; k <= 12; ++k) {
    const CantorApprox approx = build_level(params, k);
    check.require(approx.total_mass() == Dyadic::one(), "total mass at level " + std::to_string(k));
    check.require(approx.mass_per_interval == Dyadic::unit(static_cast<unsigned>(k)), "atom mass at level " + std::to_string(k));
    if (k >= 1) {
      Dyadic max_atom;
      for (const auto& atom : measure_atoms(params, k)) max_atom = std::max(max_atom, atom.mass);
      check.require(max_atom <= Dyadic::unit(static_cast<unsigned>(k)), "max atom at level " + std::to_string(k));
    }
    // First, last and an interior point of the level-k set.
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t index : {std::uint64_t{0}, count - 1, count / 3}) {
      const CantorPoint x{k, index};
      for (int j = 1; j <= k; ++j) {
        const Dyadic mass = local_mass(approx, x, params.log_length(j));
        check.require(mass == Dyadic::unit(static_cast<unsigned>(j)),
                      "local mass " + mass.to_string() + " at k=" + std::to_string(k) + ", j=" + std::to_string(j));
      }
    }
  }
  check.note("levels 0..12 exact");
  return check.outcome();
}

Outcome lelong_sandwich() {
  Checker check;
  int cases = 0;
  for (int n = 2; n <= 3; ++n) {
    for (int m = n; m <= 100; ++m) {
      const SandwichReport r = lelong_sandwich_check(m, n);
      Rational lower = Rational(1) - Rational(n, m);
      Rational middle(m - n + 1, m);
      lower.canonicalize();
      middle.canonicalize();
      check.require(r.lower == lower && r.approx == middle && r.upper == 1, "values at m=" + std::to_string(m));
      check.require(lower <= middle && middle <= 1, "chain at m=" + std::to_string(m));
      ++cases;
    }
  }
  check.note(std::to_string(cases) + " chains exact");
  return check.outcome();
}

Outcome full_mass_criterion() {
  Checker check;
  int cases = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i <= 8; ++i) {
      Rational c(i, 8);
      c.canonicalize();
      for (Geometry g : {Geometry::trivial, Geometry::hyperplane, Geometry::point}) {
        const IntersectionData data = IntersectionData::make(g, n, c);
        const FullMassDefect defect = full_mass_defect(data);
        const bool full = is_full_mass(data);
        check.require(full == (defect.delta == 0), "criterion at " + to_string(g) + " c=" + to_string(c));
        check.require(full == (residual_mass(data) == 1), "mass at " + to_string(g) + " c=" + to_string(c));
        if (g == Geometry::point) {
          check.require(defect.delta == pow(data.c(), n - 1), "point delta at c=" + to_string(data.c()));
        }
        ++cases;
      }
    }
  }
  check.note(std::to_string(cases) + " cases");
  return check.outcome();
}

}  // namespace

Profile parse_profile(const std::string& name) {
  if (name == "fast") return Profile::fast;
  if (name == "full") return Profile::full;
  throw std::invalid_argument("unknown profile '" + name + "' (expected fast or full)");
}

std::vector<SpherePoint> sample_points_near_set(const CantorParams& params, const std::vector<int>& levels,
                                                std::size_t count, double min_dist, double max_dist,
                                                unsigned long long seed) {
  std::vector<CantorApprox> approxes;
  for (int k : levels) approxes.push_back(build_level(params, k));
  const CantorApprox anchors = build_level(params, std::min(params.k_max(), 6));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, anchors.intervals.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lo = std::log(min_dist);
  const double log_hi = std::log(max_dist) + 1.0;

  std::vector<SpherePoint> samples;
  for (int attempt = 0; samples.size() < count && attempt < 100000; ++attempt) {
    const double base = anchors.intervals[pick(rng)].left;
    const double radius = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
    const double angle = 2.0 * 3.141592653589793 * unit(rng);
    const SpherePoint z(base + radius * std::cos(angle), radius * std::sin(angle));
    bool ok = true;
    for (const auto& approx : approxes) {
      const double d = distance_to_set(approx, z);
      ok = ok && d >= min_dist && d <= max_dist;
    }
    if (ok) samples.push_back(z);
  }
  return samples;
}

std::vector<CriterionResult> run_acceptance(Profile profile) {
  struct Entry {
    int id;
    const char* title;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "counterexample gap e_2(phi)=2 vs ((m-1)/m)^2", 1.0, counterexample_gap},
      {2, "mass/multiplicity identity and recursion", 5.0, mass_multiplicity_identity},
      {3, "grid covolume oracle", 60.0, [profile] { return grid_oracle(profile); }},
      {4, "spherical Green function ODE and Moebius invariance", 1.0, green_function},
      {5, "polarity bound slope in [-2.2, -1.8]", 30.0, [profile] { return polarity_bound(profile); }},
      {6, "lower-bound constant stable between k=8 and k=10", 30.0, lower_bound},
      {7, "Cantor measure sanity", 1.0, measure_sanity},
      {8, "Lelong sandwich", 1.0, lelong_sandwich},
      {9, "full-mass criterion", 1.0, full_mass_criterion},
  };

  std::vector<CriterionResult> results;
  for (const auto& entry : entries) {
    CriterionResult result;
    result.id = entry.id;
    result.title = entry.title;
    result.budget_seconds = entry.budget;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.passed = outcome.passed && result.seconds < result.budget_seconds;
    result.detail = outcome.detail;
    if (outcome.passed && !result.passed) result.detail += " (over time budget)";
    results.push_back(std::move(result));
  }
  return results;
}

void print_summary(std::ostream& out, const std::vector<CriterionResult>& results, bool show_timing) {
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    std::ostringstream line;
    line << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title;
    if (show_timing) {
      line << " (" << std::fixed << std::setprecision(3) << r.seconds << " s / " << std::setprecision(0)
           << r.budget_seconds << " s)";
    }
    out << line.str() << ": " << r.detail << '\n';
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace pshmass
