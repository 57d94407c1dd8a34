#include "doctest.h"
#include "json.hpp"
#include "pshmass/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace pshmass;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("mass subcommand") {
  const Run ok = run({"mass", "--geometry", "point", "--n", "3", "--c", "1/2", "--check-recursion", "--cross-check"});
  REQUIRE(ok.code == 0);
  const json j = json::parse(ok.out);
  CHECK(j["schema"] == "1");
  CHECK(j["e_n"] == "5/4");
  CHECK(j["e_n_recursion"] == "5/4");
  CHECK(j["delta"] == "1/4");
  CHECK(j["full_mass"] == false);
  CHECK(j["cross_check"]["mult_closed"] == "10");
  CHECK(j["cross_check"]["mult_scaled"] == "5/4");

  const Run range = run({"mass", "--c", "3/2"});
  CHECK(range.code == 1);
  CHECK(range.err.find("[0, 1]") != std::string::npos);
  CHECK(lines(range.err).size() == 1);
  CHECK(run({"mass", "--c", "3/2", "--allow-c-above-one"}).code == 0);

  const Run custom = run({"mass", "--geometry", "custom", "--n", "3", "--c", "1/4", "--iota", "1/2,2"});
  REQUIRE(custom.code == 0);
  CHECK(json::parse(custom.out)["e_n"] == "15/8");
  CHECK(run({"mass", "--geometry", "custom", "--n", "3", "--c", "1/4"}).code == 1);
  CHECK(run({"mass", "--geometry", "point", "--n", "3", "--c", "1/2", "--iota", "1,1"}).code == 1);
  CHECK(run({"mass", "--c", "abc"}).code == 1);
}

TEST_CASE("mult subcommand") {
  const Run both = run({"mult", "--family", "hyperplane", "--n", "2", "--p", "1", "--q", "2", "--oracle", "both"});
  REQUIRE(both.code == 0);
  const json j = json::parse(both.out);
  CHECK(j["mult_closed"] == "6");
  CHECK(j["rel_err"].get<double>() < 0.02);
  const Run closed = run({"mult", "--family", "point", "--n", "3", "--p", "1", "--q", "2"});
  CHECK(json::parse(closed.out)["mult_closed"] == "10");
  CHECK(json::parse(closed.out)["mult_grid"].is_null());
  CHECK(run({"mult", "--family", "point", "--n", "5", "--p", "1", "--q", "2"}).code == 1);
  CHECK(run({"mult", "--family", "point", "--n", "5", "--p", "1", "--q", "2", "--allow-large"}).code == 0);
  CHECK(run({"mult", "--oracle", "exact"}).code == 1);
  CHECK(run({"mult", "--oracle", "grid", "--resolution", "4"}).code == 1);
}

TEST_CASE("report and approx subcommands") {
  const Run report = run({"report", "--family", "cantor2", "--m-max", "100"});
  REQUIRE(report.code == 0);
  const json j = json::parse(report.out);
  CHECK(j["true_mass"] == "2/1");
  CHECK(j["gap"] == "1/1");
  CHECK(j["limit"] == "1/1");
  CHECK(j["verdict"] == "conjecture refuted");
  CHECK(j["sequence"]["values"].size() == 100);
  CHECK(j["sequence"]["values"][99]["e_n"] == "9801/10000");

  const Run csv = run({"report", "--family", "cantor-hd", "--n", "3", "--gamma", "5", "--m-max", "4", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out == "m,e_n\n1,0/1\n2,0/1\n3,1/27\n4,1/8\n");

  const Run analytic = run({"report", "--family", "analytic", "--geometry", "point", "--n", "3", "--c", "1/2"});
  REQUIRE(analytic.code == 0);
  CHECK(json::parse(analytic.out)["verdict"] == "not determined");
  CHECK(run({"report", "--family", "analytic"}).code == 1);
  CHECK(run({"report", "--family", "cantor3"}).code == 1);

  const Run approx = run({"approx", "--n", "2", "--m-max", "3", "--lambda", "5/2"});
  REQUIRE(approx.code == 0);
  const json a = json::parse(approx.out);
  CHECK(a["values"][2]["e_n"] == "4/9");
  CHECK(a["multiplier"]["order"] == "2");
  CHECK(a["multiplier"]["e_2"] == "16/25");
  CHECK(run({"approx", "--n", "3", "--m-max", "2", "--raw", "--format", "csv"}).out == "m,e_n\n1,-1/1\n2,0/1\n");
}

TEST_CASE("cantor subcommand") {
  const Run intervals = run({"cantor", "--a", "3", "--depth", "1"});
  REQUIRE(intervals.code == 0);
  const auto rows = lines(intervals.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "index,left,right,log_length,mass");
  CHECK(rows[1].rfind("0,0,0.049787068367863", 0) == 0);
  const Run cdf = run({"cantor", "--depth", "2", "--emit", "cdf"});
  CHECK(lines(cdf.out).back().substr(lines(cdf.out).back().rfind(',') + 1) == "1/1");
  CHECK(run({"cantor", "--a", "1.5"}).code == 1);
  CHECK(run({"cantor", "--emit", "points"}).code == 1);

  const std::string path = "test_cli_cantor.csv";
  REQUIRE(run({"cantor", "--depth", "2", "--out", path}).code == 0);
  std::ifstream file(path);
  std::stringstream contents;
  contents << file.rdbuf();
  CHECK(contents.str() == run({"cantor", "--depth", "2"}).out);
  std::remove(path.c_str());
}

TEST_CASE("potential subcommand") {
  const Run r = run({"potential", "--depth", "6", "--eval", "inf", "--eval", "0.5,1", "--bound-fit", "4:6"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["records"][0]["point"] == "inf");
  CHECK(j["records"][0]["value"].get<double>() == doctest::Approx(-0.33474953386950834).epsilon(1e-12));
  CHECK(j["records"][1]["point"]["im"] == 1.0);
  CHECK(j["bound_fit"]["values"].size() == 3);
  CHECK(run({"potential", "--eval", "1,2,3"}).code == 1);
  CHECK(run({"potential"}).code == 1);
  CHECK(run({"potential", "--eval", "0", "--nodes", "0"}).code == 1);
}

TEST_CASE("parse errors, help and determinism") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"mass", "--c", "1/2", "--bogus"}).code == 1);
  const Run help = run({"mass", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--geometry") != std::string::npos);
  const std::vector<std::string> args{"report", "--family", "cantor2", "--m-max", "30"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> pot{"potential", "--depth", "5", "--eval", "0.3,0.2", "--eval", "0"};
  CHECK(run(pot).out == run(pot).out);
}
