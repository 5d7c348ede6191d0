#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "msf/report.hpp"

using msf::ExperimentConfig;

namespace {

const char* kMinimal = R"({"seed": 1})";

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("minimal config takes the canonical defaults") {
  auto cfg = ExperimentConfig::parse(kMinimal);
  CHECK(cfg.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(cfg.beta == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(cfg.m == 1);
  CHECK(cfg.window_half_width == 1.0);
  CHECK(cfg.seed == 1);
  CHECK(cfg.generators.size() == 1);
  CHECK(cfg.gabor.A == 3.0);
  CHECK(cfg.grids.t_grid().size() == 101);
  CHECK(cfg.grids.x_grid().size() == 81);
  CHECK(cfg.raw == kMinimal);
}

TEST_CASE("seed is mandatory") {
  CHECK_THROWS_WITH_AS(ExperimentConfig::parse("{}"),
                       "seed: required for deterministic runs", msf::config_error);
}

TEST_CASE("unknown keys are reported with their location") {
  CHECK_THROWS_WITH_AS(ExperimentConfig::parse(R"({"seed": 1, "bogus": 2})"),
                       "config: unknown key 'bogus'", msf::config_error);
  CHECK_THROWS_WITH_AS(ExperimentConfig::parse(R"({"seed": 1, "scheme": {"gamma": 2}})"),
                       "scheme: unknown key 'gamma'", msf::config_error);
}

TEST_CASE("invalid values are reported with their field path") {
  CHECK_THROWS_WITH_AS(
      ExperimentConfig::parse(R"({"seed": 1, "tolerances": {"density": -1.0}})"),
      "tolerances.density: must be positive", msf::config_error);
  CHECK_THROWS_WITH_AS(ExperimentConfig::parse(R"({"seed": 1, "scheme": {"m": 2}})"),
                       "scheme.m: only m = 1 is supported", msf::config_error);
  CHECK_THROWS_WITH_AS(
      ExperimentConfig::parse(R"({"seed": 1, "window": {"half_width": 0}})"),
      "window.half_width: must be positive", msf::config_error);
}

TEST_CASE("malformed json is a config error") {
  CHECK_THROWS_AS(ExperimentConfig::parse("{nope"), msf::config_error);
}

TEST_CASE("generator parsing covers the three kinds and rejects others") {
  auto cfg = ExperimentConfig::parse(
      R"({"seed": 1, "generators": [
            {"kind": "gaussian", "amplitude": 2.0, "width": 0.5},
            {"kind": "indicator", "half_width": 0.7},
            {"kind": "cutoff_gaussian", "width": 1.0, "cutoff": 2.0}]})");
  REQUIRE(cfg.generators.size() == 3);
  CHECK(cfg.generators[0].ft(0.0).real() == doctest::Approx(1.0));  // A * w
  CHECK(cfg.generators[1].ft(0.5).real() == doctest::Approx(1.0));
  CHECK(cfg.generators[2].compact_ft_support());

  CHECK_THROWS_WITH_AS(
      ExperimentConfig::parse(R"({"seed": 1, "generators": [{"kind": "spline"}]})"),
      "generator.kind: unknown kind 'spline'", msf::config_error);
}

TEST_CASE("load applies dotted overrides but echoes the original bytes") {
  const std::string text = R"({"seed": 7, "gabor": {"A": 3.0}})";
  auto path = write_temp("msf_cfg_override.json", text);
  auto cfg = ExperimentConfig::load(path, {"gabor.A=5.5", "tolerances.density=0.5"});
  CHECK(cfg.gabor.A == 5.5);
  CHECK(cfg.tolerances.density == 0.5);
  CHECK(cfg.raw == text);

  CHECK_THROWS_AS(ExperimentConfig::load(path, {"no-equals-sign"}), msf::config_error);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/cfg.json"), msf::config_error);
  std::remove(path.c_str());
}

TEST_CASE("report documents are deterministic and track pass state") {
  auto cfg = ExperimentConfig::parse(kMinimal);
  msf::ReportDocument a("density", cfg, {"gabor.A=5"});
  msf::ReportDocument b("density", cfg, {"gabor.A=5"});
  msf::json payload = {{"value", 1.5}};
  a.add_check("sample", payload, true);
  b.add_check("sample", payload, true);
  CHECK(a.dump() == b.dump());
  CHECK(a.all_pass());

  a.add_check("failing", payload, false);
  CHECK(!a.all_pass());

  auto doc = msf::json::parse(a.dump());
  CHECK(doc["subcommand"] == "density");
  CHECK(doc["config_echo"] == kMinimal);
  CHECK(doc["overrides"][0] == "gabor.A=5");
  CHECK(doc["checks"].size() == 2);
  CHECK(doc["all_pass"] == false);
}

TEST_CASE("doubles are formatted to the shortest round-trip form") {
  CHECK(msf::format_double(0.5) == "0.5");
  CHECK(msf::format_double(2.0) == "2");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(msf::format_double(v)) == v);
  CHECK(std::stod(msf::format_double(1e-300)) == 1e-300);
}

TEST_CASE("csv output uses a header, dot decimals, and LF endings") {
  const auto path = (std::filesystem::temp_directory_path() / "msf_test.csv").string();
  msf::write_csv(path, {"R", "density"}, {{100.0, 1.98}, {200.0, 2.01}});
  const std::string text = slurp(path);
  CHECK(text == "R,density\n100,1.98\n200,2.01\n");
  std::remove(path.c_str());
}
