#include "pshmass/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pshmass {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Json json_double(double value) {
  if (!std::isfinite(value)) return format_double(value);
  return value;
}

Json to_json(const SpherePoint& point) {
  if (point.is_infinity()) return "inf";
  return Json{{"re", json_double(point.coord().real())}, {"im", json_double(point.coord().imag())}};
}

Json to_json(const BoundFit& fit) {
  Json values = Json::array();
  for (std::size_t i = 0; i < fit.levels.size(); ++i) {
    values.push_back(Json{{"k", fit.levels[i]}, {"value", json_double(fit.values[i])}});
  }
  return Json{{"slope", json_double(fit.slope)},
              {"intercept", json_double(fit.intercept)},
              {"strictly_decreasing", fit.strictly_decreasing()},
              {"meets_contract", fit.meets_contract()},
              {"values", values}};
}

Json to_json(const CrossCheckReport& report) {
  Json j{{"family", to_string(report.family)},
         {"n", report.n},
         {"p", report.p},
         {"q", report.q},
         {"c", to_string(report.c)},
         {"e_n", to_string(report.residual_mass)},
         {"e_n_recursion", to_string(report.recursion_mass)},
         {"mult_closed", report.mult_closed.get_str()},
         {"mult_scaled", to_string(report.scaled_mult)}};
  if (report.grid_estimate) {
    j["mult_grid"] = json_double(*report.grid_estimate);
    j["mult_grid_scaled"] = json_double(*report.grid_scaled);
  }
  return j;
}

Json to_json(const ApproxMassSeq& seq) {
  Json values = Json::array();
  for (const auto& [m, mass] : seq.values) values.push_back(Json{{"m", m}, {"e_n", to_string(mass)}});
  return Json{{"n", seq.n}, {"limit", to_string(seq.limit)}, {"values", values}};
}

Json to_json(const MassReport& report) {
  Json j{{"schema", kSchemaVersion}, {"family", report.family}, {"n", report.n}};
  if (report.gamma) j["gamma"] = *report.gamma;
  if (report.cantor_total_mass) j["cantor_total_mass"] = to_string(*report.cantor_total_mass);
  j["true_mass"] = to_string(report.true_mass);
  j["limit"] = report.limit ? Json(to_string(*report.limit)) : Json(nullptr);
  j["gap"] = report.gap ? Json(to_string(*report.gap)) : Json(nullptr);
  j["verdict"] = report.verdict;
  if (report.twin) {
    j["valuative_twin"] = Json{{"potential", report.twin->potential},
                               {"e_n", to_string(report.twin->mass)},
                               {"same_multiplier_ideals", report.twin->same_multiplier_ideals}};
  }
  j["sequence"] = report.sequence ? to_json(*report.sequence) : Json(nullptr);
  return j;
}

CantorEmit parse_cantor_emit(const std::string& name) {
  if (name == "intervals") return CantorEmit::intervals;
  if (name == "atoms") return CantorEmit::atoms;
  if (name == "cdf") return CantorEmit::cdf;
  throw std::invalid_argument("unknown emit mode '" + name + "' (expected intervals, atoms or cdf)");
}

void write_cantor_csv(std::ostream& out, const CantorApprox& approx, CantorEmit emit) {
  out << "index,left,right,log_length,mass\n";
  Dyadic cumulative;
  for (std::size_t i = 0; i < approx.intervals.size(); ++i) {
    const auto& iv = approx.intervals[i];
    double left = iv.left;
    double right = iv.right;
    std::string mass = approx.mass_per_interval.to_string();
    if (emit == CantorEmit::atoms) {
      left = right = iv.midpoint();
    } else if (emit == CantorEmit::cdf) {
      cumulative += approx.mass_per_interval;
      mass = cumulative.to_string();
    }
    out << i << ',' << format_double(left) << ',' << format_double(right) << ',' << format_double(iv.log_length) << ','
        << mass << '\n';
  }
}

void write_sequence_csv(std::ostream& out, const ApproxMassSeq& seq) {
  out << "m,e_n\n";
  for (const auto& [m, mass] : seq.values) out << m << ',' << to_string(mass) << '\n';
}

}  // namespace pshmass
