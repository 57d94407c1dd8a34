#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pshmass/spherical_potential.hpp"

namespace pshmass {

enum class Profile { fast, full };

Profile parse_profile(const std::string& name);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Runs the acceptance criteria in order; a criterion passes only when its
/// check holds and it finishes inside its time budget.
std::vector<CriterionResult> run_acceptance(Profile profile);

/// One "[PASS]/[FAIL] <id>. <title> ..." line per criterion plus a total line.
/// Without timings the output depends only on the computed values.
void print_summary(std::ostream& out, const std::vector<CriterionResult>& results, bool show_timing = true);

/// Deterministic sample points off the Cantor set with chordal distance to
/// the level-k sets (for every k in `levels`) inside [min_dist, max_dist].
std::vector<SpherePoint> sample_points_near_set(const CantorParams& params, const std::vector<int>& levels,
                                                std::size_t count, double min_dist, double max_dist,
                                                unsigned long long seed);

}  // namespace pshmass
