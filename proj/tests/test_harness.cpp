#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "modweyl/harness.hpp"

using namespace modweyl;

namespace {

std::string strip_wall_times(std::string s) {
  return std::regex_replace(s, std::regex("\"wall_time_s\": [-0-9.e+]+"), "\"wall_time_s\": 0");
}

}  // namespace

TEST_CASE("config parsing and defaults") {
  const RunConfig cfg = parse_config(R"({"group": [2, 2], "d": 2, "action": "trivial"})");
  REQUIRE(cfg.systems.size() == 1);
  CHECK(cfg.systems[0].factors == std::vector<int>{2, 2});
  CHECK(cfg.systems[0].d == 2);
  CHECK(cfg.suites == suite_names());
  CHECK(cfg.tolerance == 1e-10);

  const RunConfig grid = parse_config(R"({"grid": "default", "suites": ["axioms"]})");
  CHECK(grid.systems.size() == 12);
  CHECK(grid.suites == std::vector<std::string>{"axioms"});

  const RunConfig gens = parse_config(R"({"group": [2], "d": 2, "action": [[[0, 1], [1, 0]]]})");
  REQUIRE(gens.systems[0].generators.size() == 1);
  CHECK(gens.systems[0].generators[0](0, 1) == Complex(1.0));
  CHECK(gens.systems[0].build().dim() == 2);

  const RunConfig complex_entries =
      parse_config(R"({"group": [4], "d": 2, "action": [[[[1, 0], [0, 0]], [[0, 0], [0, 1]]]]})");
  CHECK(complex_entries.systems[0].generators[0](1, 1) == Complex(0.0, 1.0));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [], "d": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 1, "tolerance": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 1, "tolerance": 0.1})"), ConfigError);
  CHECK_NOTHROW(parse_config(R"({"group": [2], "d": 1, "tolerance": 0.01})"));
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 1, "suites": ["axioms", "nope"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 1, "colour": "blue"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 1, "multiplicities": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": [2], "d": 1, "action": "twisted"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": "default", "d": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"group": "Z2", "d": 1})"), ConfigError);
}

TEST_CASE("invalid actions are reported when the system is built") {
  const RunConfig nonunitary = parse_config(R"({"group": [2], "d": 2, "action": [[[1, 0], [0, 2]]]})");
  try {
    (void)nonunitary.systems[0].build();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("generator 0 is not unitary") != std::string::npos);
  }
  const RunConfig shape = parse_config(R"({"group": [4], "d": 2, "action": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]})");
  CHECK_THROWS_AS((void)shape.systems[0].build(), StructuralError);
  CHECK_THROWS_AS(run(shape), StructuralError);
}

TEST_CASE("a classical run passes and names every theorem") {
  RunConfig cfg = parse_config(R"({"group": [2], "d": 1, "samples": 5})");
  const Report report = run(cfg);
  CHECK(report.pass());
  REQUIRE(report.suites.size() == suite_names().size());
  for (const auto& s : report.suites) {
    CHECK_FALSE(s.anchor.empty());
    CHECK(s.pass == (s.worst_residual <= s.tolerance));
  }
  const auto doc = nlohmann::json::parse(report.to_json());
  CHECK(doc["status"] == "pass");
  CHECK(doc["suites"]["decompose"]["cases"][0]["runs"][0].contains("W_checksum"));
  CHECK(doc["config"]["systems"][0]["group"] == nlohmann::json::array({2}));
}

TEST_CASE("reports reproduce byte for byte apart from wall times") {
  const RunConfig cfg = parse_config(R"({"group": [3], "d": 2, "samples": 3, "seeds": [4, 5],
                                         "action": [[[[1, 0], [0, 0]], [[0, 0], [-0.5, 0.8660254037844386]]]]})");
  const std::string a = strip_wall_times(run(cfg).to_json());
  const std::string b = strip_wall_times(run(cfg).to_json());
  CHECK(a == b);
}

TEST_CASE("report files are written whole") {
  const auto dir = std::filesystem::temp_directory_path() / "modweyl_harness_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "report.json").string();
  const Report report = run(parse_config(R"({"group": [2], "d": 1, "suites": ["axioms"]})"));
  write_report(report, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == report.to_json());
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("decompose record") {
  const RunConfig cfg = parse_config(R"({"group": [2, 2], "d": 2, "action": "trivial"})");
  bool pass = false;
  const auto doc = nlohmann::json::parse(decompose_record(cfg, 2, 3, &pass));
  CHECK(pass);
  CHECK(doc["m"] == 2);
  CHECK(doc["seed"] == 3);
  CHECK(doc["W_checksum"].get<std::string>().size() == 16);
  CHECK(doc["residuals"]["R"].get<double>() <= 1e-8);
}

TEST_CASE("demo") {
  std::ostringstream out;
  demo(out);
  const std::string s = out.str();
  CHECK(s.find("V(chi_1) U(1)") != std::string::npos);
  CHECK(s.find("recovered multiplicity m = 2") != std::string::npos);
  CHECK(s.find("F(delta_chi_1) = (1, -1)") != std::string::npos);
  std::ostringstream again;
  demo(again);
  CHECK(again.str() == s);
}
