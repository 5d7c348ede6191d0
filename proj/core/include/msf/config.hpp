#pragma once

#include <string>
#include <vector>

#include "msf/gabor.hpp"

#include <json.hpp>

namespace msf {

using json = nlohmann::ordered_json;

struct ToleranceSet {
  double poisson = 1e-6;
  double density = 1e-2;
  double bracket = 1e-2;
  double mean = 1e-2;
  double plancherel = 1e-2;
  double covariance = 1e-8;
  double bessel_slack = 1e-2;
  double series = 1e-3;
  double certificate = 1e-6;
  double wexler_raz = 1e-6;
};

struct GridSpec {
  double t_min = -2.0, t_max = 2.0;
  int t_count = 101;
  double x_min = -2.0, x_max = 2.0;
  int x_count = 81;
  std::vector<double> R_schedule = {250.0, 500.0, 1000.0, 2000.0};

  std::vector<double> t_grid() const;
  std::vector<double> x_grid() const;
};

struct TruncationSpec {
  double P = 40.0;
  double patch_radius = 50.0;
  double weight_floor = 1e-10;
};

struct GaborSpec {
  double A = 3.0;
  int L = 1;
  double beta_radius = 6.0;
};

struct ExperimentConfig {
  double alpha = 1.4142135623730951;  // sqrt(2)
  double beta = 1.7320508075688772;   // sqrt(3)
  int m = 1;
  double window_half_width = 1.0;
  BumpSpec bump{Window(1.0), 0.5, 2, 40};
  GridSpec grids;
  TruncationSpec truncations;
  ToleranceSet tolerances;
  unsigned long long seed = 0;
  bool seed_present = false;
  std::vector<FourierFunction> generators;
  std::vector<FourierFunction> partner_generators;
  GaborSpec gabor;

  std::string raw;  // the exact bytes the config was parsed from

  CutProjectScheme scheme() const { return CutProjectScheme::canonical(alpha, beta); }
  Window window() const { return Window(window_half_width); }

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path,
                               const std::vector<std::string>& overrides = {});
};

FourierFunction parse_generator(const json& j);

}  // namespace msf
