#include "pshmass/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pshmass/approximation.hpp"
#include "pshmass/intersection_masses.hpp"
#include "pshmass/monomial_multiplicity.hpp"
#include "pshmass/serialize.hpp"
#include "pshmass/spherical_potential.hpp"
#include "pshmass/verify.hpp"

namespace pshmass {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream stream(text);
  while (std::getline(stream, part, separator)) parts.push_back(trim(part));
  if (!text.empty() && text.back() == separator) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return value;
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  return value;
}

// "x,y", "x" or "inf".
SpherePoint parse_point(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return SpherePoint::infinity();
  const auto parts = split(t, ',');
  if (parts.size() == 1) return SpherePoint(parse_double(parts[0]));
  if (parts.size() == 2) return SpherePoint(parse_double(parts[0]), parse_double(parts[1]));
  throw std::invalid_argument("evaluation point must be \"x,y\", \"x\" or \"inf\", got '" + text + "'");
}

std::pair<int, int> parse_level_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("level range must be kmin:kmax, got '" + text + "'");
  return {parse_int(parts[0]), parse_int(parts[1])};
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_rational(part));
  return values;
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& payload) {
  if (!path) {
    out << payload;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + *path + "'");
  file << payload;
  if (!file) throw std::invalid_argument("failed writing output file '" + *path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

enum class Format { json, csv };

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw std::invalid_argument("unknown format '" + name + "' (expected json or csv)");
}

struct CantorOptions {
  double a = 3.0;
  int depth = 4;
  std::string emit = "intervals";
  std::optional<std::string> out;
};

int run_cantor(const CantorOptions& o, std::ostream& out) {
  const CantorParams params(o.a, std::max(o.depth, CantorParams::kDefaultMaxDepth));
  const CantorApprox approx = build_level(params, o.depth);
  std::ostringstream csv;
  write_cantor_csv(csv, approx, parse_cantor_emit(o.emit));
  emit(out, o.out, csv.str());
  return kExitOk;
}

struct PotentialOptions {
  double a = 3.0;
  int depth = 8;
  int nodes = 8;
  std::vector<std::string> eval;
  std::optional<std::string> bound_fit;
};

int run_potential(const PotentialOptions& o, std::ostream& out) {
  std::vector<SpherePoint> points;
  for (const auto& text : o.eval) points.push_back(parse_point(text));
  std::optional<std::pair<int, int>> fit_range;
  if (o.bound_fit) fit_range = parse_level_range(*o.bound_fit);
  if (points.empty() && !fit_range) throw std::invalid_argument("potential needs --eval or --bound-fit");

  int deepest = std::max(o.depth, CantorParams::kDefaultMaxDepth);
  if (fit_range) deepest = std::max(deepest, fit_range->second);
  const CantorParams params(o.a, deepest);
  QuadratureConfig cfg;
  cfg.depth = o.depth;
  cfg.nodes_per_interval = o.nodes;
  cfg.validate();

  Json records = Json::array();
  for (const auto& z : points) {
    records.push_back(Json{{"point", to_json(z)}, {"value", json_double(potential(z, params, cfg).value)}});
  }
  Json j{{"schema", kSchemaVersion}, {"a", o.a}, {"depth", o.depth}, {"nodes", o.nodes}, {"records", records}};
  if (fit_range) j["bound_fit"] = to_json(upper_bound_fit(params, fit_range->first, fit_range->second, {}, o.nodes));
  out << dump(j);
  return kExitOk;
}

struct MultOptions {
  std::string family = "hyperplane";
  int n = 2;
  int p = 1;
  int q = 2;
  std::string oracle = "closed";
  int resolution = 256;
  bool allow_large = false;
};

int run_mult(const MultOptions& o, std::ostream& out) {
  if (o.oracle != "closed" && o.oracle != "grid" && o.oracle != "both") {
    throw std::invalid_argument("unknown oracle '" + o.oracle + "' (expected closed, grid or both)");
  }
  const Family family = parse_family(o.family);
  const DeskGuard guard{o.allow_large};
  const MonomialIdeal ideal = family_ideal(family, o.n, o.p, o.q, guard);
  const Integer closed = multiplicity_closed_form(family, o.n, o.p, o.q);

  Json j{{"schema", kSchemaVersion}, {"family", to_string(family)}, {"n", o.n}, {"p", o.p}, {"q", o.q}};
  j["mult_closed"] = o.oracle == "grid" ? Json(nullptr) : Json(closed.get_str());
  if (o.oracle == "closed") {
    j["mult_grid"] = nullptr;
    j["rel_err"] = nullptr;
  } else {
    const double grid = covolume_grid(ideal, o.resolution);
    j["resolution"] = o.resolution;
    j["mult_grid"] = json_double(grid);
    j["rel_err"] = o.oracle == "both" ? json_double(std::abs(grid - closed.get_d()) / closed.get_d()) : Json(nullptr);
  }
  out << dump(j);
  return kExitOk;
}

struct MassOptions {
  std::string geometry = "hyperplane";
  int n = 2;
  std::string c;
  std::optional<std::string> iota;
  bool check_recursion = false;
  bool cross_check = false;
  bool allow_c_above_one = false;
};

int run_mass(const MassOptions& o, std::ostream& out) {
  const Geometry geometry = parse_geometry(o.geometry);
  const Rational c = parse_rational(o.c);
  std::vector<Rational> iota;
  if (o.iota) iota = parse_rational_list(*o.iota);
  if (geometry == Geometry::custom && !o.iota) throw std::invalid_argument("custom geometry needs --iota");
  const IntersectionData data = IntersectionData::make(geometry, o.n, c, iota, o.allow_c_above_one);

  const Rational mass = residual_mass(data);
  const FullMassDefect defect = full_mass_defect(data);
  Json iota_json = Json::array();
  for (const auto& v : data.iota()) iota_json.push_back(to_string(v));
  Json j{{"schema", kSchemaVersion},
         {"geometry", to_string(geometry)},
         {"n", o.n},
         {"c", to_string(data.c())},
         {"iota", iota_json},
         {"e_n", to_string(mass)},
         {"delta", to_string(defect.delta)},
         {"volume", to_string(defect.volume)},
         {"full_mass", is_full_mass(data)}};

  if (o.check_recursion) {
    const Rational recursion = mass_via_recursion(data);
    if (recursion != mass) {
      throw CrossCheckFailure("recursion mass " + to_string(recursion) + " != residual mass " + to_string(mass));
    }
    j["e_n_recursion"] = to_string(recursion);
  }
  if (o.cross_check) {
    if (geometry != Geometry::hyperplane && geometry != Geometry::point) {
      throw std::invalid_argument("--cross-check needs the hyperplane or point geometry");
    }
    if (c == 0) throw std::invalid_argument("--cross-check needs c = p/q with p >= 1");
    const Family family = geometry == Geometry::hyperplane ? Family::hyperplane : Family::point;
    const CrossCheckReport report =
        cross_check(family, o.n, static_cast<int>(data.c().get_num().get_si()), static_cast<int>(data.c().get_den().get_si()));
    j["cross_check"] = to_json(report);
  }
  out << dump(j);
  return kExitOk;
}

struct ApproxOptions {
  int n = 2;
  int m_max = 20;
  std::optional<std::string> lambda;
  bool raw = false;
  std::string format = "json";
};

int run_approx(const ApproxOptions& o, std::ostream& out) {
  const Format format = parse_format(o.format);
  if (o.n < 2) throw std::invalid_argument("approx needs n >= 2");
  const ApproxMassSeq seq = approx_mass_sequence(o.n, o.m_max, o.raw ? MassClamp::raw : MassClamp::clamp);
  if (format == Format::csv) {
    if (o.lambda) throw std::invalid_argument("--lambda is reported in JSON only");
    write_sequence_csv(out, seq);
    return kExitOk;
  }
  Json j{{"schema", kSchemaVersion}, {"clamped", !o.raw}};
  const Json body = to_json(seq);
  for (const auto& [key, value] : body.items()) j[key] = value;
  if (o.lambda) {
    if (o.n != 2) throw std::invalid_argument("--lambda is defined for n = 2 only");
    const Rational lambda = parse_rational(*o.lambda);
    j["multiplier"] = Json{{"lambda", to_string(lambda)},
                           {"order", multiplier_order(lambda).get_str()},
                           {"e_2", to_string(multiplier_mass(lambda))}};
  }
  out << dump(j);
  return kExitOk;
}

struct ReportOptions {
  std::string family = "cantor2";
  double a = 3.0;
  int gamma = 2;
  std::optional<int> n;
  std::string geometry = "point";
  std::optional<std::string> c;
  int m_max = 50;
  std::optional<std::string> out;
  std::string format = "json";
};

PshFamily report_family(const ReportOptions& o) {
  if (o.family == "cantor2") {
    if (o.n && *o.n != 2) throw std::invalid_argument("cantor2 lives in dimension n = 2");
    return PshFamily::cantor2(CantorParams(o.a));
  }
  if (o.family == "cantor-hd") return PshFamily::cantor_highdim(o.n.value_or(3), o.gamma);
  if (o.family == "analytic") {
    if (!o.c) throw std::invalid_argument("analytic family needs --c");
    const Geometry geometry = parse_geometry(o.geometry);
    if (geometry == Geometry::custom) throw std::invalid_argument("report supports trivial, hyperplane or point geometry");
    return PshFamily::analytic(IntersectionData::make(geometry, o.n.value_or(2), parse_rational(*o.c)));
  }
  throw std::invalid_argument("unknown family '" + o.family + "' (expected cantor2, cantor-hd or analytic)");
}

int run_report(const ReportOptions& o, std::ostream& out) {
  const Format format = parse_format(o.format);
  const MassReport report = counterexample_report(report_family(o), o.m_max);
  std::ostringstream payload;
  if (format == Format::csv) {
    if (!report.sequence) throw std::invalid_argument("no approximant sequence is modelled for this family");
    write_sequence_csv(payload, *report.sequence);
  } else {
    payload << dump(to_json(report));
  }
  emit(out, o.out, payload.str());
  return kExitOk;
}

struct VerifyOptions {
  std::string profile = "fast";
  std::string format = "text";
};

int run_verify(const VerifyOptions& o, std::ostream& out) {
  if (o.format != "text" && o.format != "json") {
    throw std::invalid_argument("unknown format '" + o.format + "' (expected text or json)");
  }
  const auto results = run_acceptance(parse_profile(o.profile));
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (o.format == "json") {
    Json criteria = Json::array();
    for (const auto& r : results) {
      criteria.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    }
    out << dump(Json{{"schema", kSchemaVersion}, {"profile", o.profile}, {"passed", all}, {"criteria", criteria}});
  } else {
    print_summary(out, results, false);
  }
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residual Monge-Ampere masses and their multiplier-ideal approximants", "pshmass"};
  app.require_subcommand(1);
  std::function<int()> action;

  CantorOptions cantor;
  auto* cantor_cmd = app.add_subcommand("cantor", "Level-k Cantor intervals, atoms or distribution function as CSV");
  cantor_cmd->add_option("--a", cantor.a, "Decay base, l_k = exp(-a^k)")->capture_default_str();
  cantor_cmd->add_option("--depth", cantor.depth, "Construction level k")->check(CLI::Range(0, 24))->capture_default_str();
  cantor_cmd->add_option("--emit", cantor.emit, "intervals | atoms | cdf")->capture_default_str();
  cantor_cmd->add_option("--out", cantor.out, "Output file (default stdout)");
  cantor_cmd->callback([&] { action = [&] { return run_cantor(cantor, out); }; });

  PotentialOptions pot;
  auto* pot_cmd = app.add_subcommand("potential", "Logarithmic potential of the Cantor measure on the sphere");
  pot_cmd->add_option("--a", pot.a, "Decay base")->capture_default_str();
  pot_cmd->add_option("--depth", pot.depth, "Measure level")->check(CLI::Range(1, 20))->capture_default_str();
  pot_cmd->add_option("--nodes", pot.nodes, "Gauss-Legendre nodes per interval")->check(CLI::Range(1, 64))->capture_default_str();
  pot_cmd->add_option("--eval", pot.eval, "Point \"x,y\", \"x\" or \"inf\" (repeatable)")->allow_extra_args(false);
  pot_cmd->add_option("--bound-fit", pot.bound_fit, "Fit p(0) against (a/2)^k over kmin:kmax");
  pot_cmd->callback([&] { action = [&] { return run_potential(pot, out); }; });

  MultOptions mult;
  auto* mult_cmd = app.add_subcommand("mult", "Hilbert-Samuel multiplicity of a family ideal");
  mult_cmd->add_option("--family", mult.family, "hyperplane | point")->capture_default_str();
  mult_cmd->add_option("--n", mult.n, "Dimension")->capture_default_str();
  mult_cmd->add_option("--p", mult.p, "Numerator of c")->capture_default_str();
  mult_cmd->add_option("--q", mult.q, "Denominator of c")->capture_default_str();
  mult_cmd->add_option("--oracle", mult.oracle, "closed | grid | both")->capture_default_str();
  mult_cmd->add_option("--resolution", mult.resolution, "Grid cells per axis")->capture_default_str();
  mult_cmd->add_flag("--allow-large", mult.allow_large, "Lift the n <= 4, q <= 8 limits");
  mult_cmd->callback([&] { action = [&] { return run_mult(mult, out); }; });

  MassOptions mass;
  auto* mass_cmd = app.add_subcommand("mass", "Residual mass from an intersection table");
  mass_cmd->add_option("--geometry", mass.geometry, "trivial | hyperplane | point | custom")->capture_default_str();
  mass_cmd->add_option("--n", mass.n, "Dimension")->capture_default_str();
  mass_cmd->add_option("--c", mass.c, "Exponent p/q")->required();
  mass_cmd->add_option("--iota", mass.iota, "Comma-separated table, custom geometry only");
  mass_cmd->add_flag("--check-recursion", mass.check_recursion, "Confirm via the integer recursion");
  mass_cmd->add_flag("--cross-check", mass.cross_check, "Confirm against the ideal multiplicity");
  mass_cmd->add_flag("--allow-c-above-one", mass.allow_c_above_one, "Evaluate formally for c > 1");
  mass_cmd->callback([&] { action = [&] { return run_mass(mass, out); }; });

  ApproxOptions approx;
  auto* approx_cmd = app.add_subcommand("approx", "Masses of the multiplier-ideal approximants");
  approx_cmd->add_option("--n", approx.n, "Dimension")->capture_default_str();
  approx_cmd->add_option("--m-max", approx.m_max, "Last index m")->check(CLI::Range(1, 100000))->capture_default_str();
  approx_cmd->add_option("--lambda", approx.lambda, "Rational lambda for J(lambda phi), n = 2");
  approx_cmd->add_flag("--raw", approx.raw, "Unclamped formula for m < n");
  approx_cmd->add_option("--format", approx.format, "json | csv")->capture_default_str();
  approx_cmd->callback([&] { action = [&] { return run_approx(approx, out); }; });

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Compare the true mass with the approximant limit");
  report_cmd->add_option("--family", report.family, "cantor2 | cantor-hd | analytic")->capture_default_str();
  report_cmd->add_option("--a", report.a, "Decay base for cantor2")->capture_default_str();
  report_cmd->add_option("--gamma", report.gamma, "Twisting degree for cantor-hd")->capture_default_str();
  report_cmd->add_option("--n", report.n, "Dimension");
  report_cmd->add_option("--geometry", report.geometry, "Analytic geometry")->capture_default_str();
  report_cmd->add_option("--c", report.c, "Analytic exponent p/q");
  report_cmd->add_option("--m-max", report.m_max, "Last index m")->check(CLI::Range(1, 100000))->capture_default_str();
  report_cmd->add_option("--out", report.out, "Output file (default stdout)");
  report_cmd->add_option("--format", report.format, "json | csv")->capture_default_str();
  report_cmd->callback([&] { action = [&] { return run_report(report, out); }; });

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
  verify_cmd->add_option("--profile", verify.profile, "fast | full")->capture_default_str();
  verify_cmd->add_option("--format", verify.format, "text | json")->capture_default_str();
  verify_cmd->callback([&] { action = [&] { return run_verify(verify, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    return action();
  } catch (const CrossCheckFailure& e) {
    err << "cross-check failure: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace pshmass
