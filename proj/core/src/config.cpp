#include "msf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace msf {

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw config_error(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw config_error(where + ": unknown key '" + it.key() + "'");
    }
  }
}

double positive(const json& j, const std::string& field) {
  if (!j.is_number()) throw config_error(field + ": expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw config_error(field + ": must be positive");
  return v;
}

}  // namespace

std::vector<double> GridSpec::t_grid() const {
  std::vector<double> out;
  out.reserve(t_count);
  for (int i = 0; i < t_count; ++i) {
    out.push_back(t_count == 1 ? t_min
                               : t_min + (t_max - t_min) * i / static_cast<double>(t_count - 1));
  }
  return out;
}

std::vector<double> GridSpec::x_grid() const {
  std::vector<double> out;
  out.reserve(x_count);
  for (int i = 0; i < x_count; ++i) {
    out.push_back(x_count == 1 ? x_min
                               : x_min + (x_max - x_min) * i / static_cast<double>(x_count - 1));
  }
  return out;
}

FourierFunction parse_generator(const json& j) {
  require_keys(j, "generator", {"kind", "amplitude", "width", "half_width", "cutoff"});
  const std::string kind = j.value("kind", "");
  if (kind == "gaussian") {
    return FourierFunction::gaussian(j.value("amplitude", 1.0), positive(j.at("width"), "generator.width"));
  }
  if (kind == "indicator") {
    return FourierFunction::indicator_interval(positive(j.at("half_width"), "generator.half_width"));
  }
  if (kind == "cutoff_gaussian") {
    return FourierFunction::smooth_cutoff_gaussian(positive(j.at("width"), "generator.width"),
                                                   positive(j.at("cutoff"), "generator.cutoff"));
  }
  throw config_error("generator.kind: unknown kind '" + kind + "'");
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  require_keys(j, "config",
               {"scheme", "window", "bump", "grids", "truncations", "tolerances", "seed",
                "generators", "partner_generators", "gabor"});

  ExperimentConfig cfg;
  cfg.raw = text;

  if (j.contains("scheme")) {
    const auto& s = j["scheme"];
    require_keys(s, "scheme", {"alpha", "beta", "m"});
    if (s.contains("alpha")) cfg.alpha = positive(s["alpha"], "scheme.alpha");
    if (s.contains("beta")) cfg.beta = positive(s["beta"], "scheme.beta");
    if (s.contains("m")) {
      cfg.m = s["m"].get<int>();
      if (cfg.m != 1) throw config_error("scheme.m: only m = 1 is supported");
    }
  }
  if (j.contains("window")) {
    const auto& w = j["window"];
    require_keys(w, "window", {"half_width"});
    if (w.contains("half_width")) cfg.window_half_width = positive(w["half_width"], "window.half_width");
  }
  cfg.bump = BumpSpec{Window(cfg.window_half_width), 0.5, 2, 40};
  if (j.contains("bump")) {
    const auto& b = j["bump"];
    require_keys(b, "bump", {"epsilon", "n", "S"});
    if (b.contains("epsilon")) cfg.bump.epsilon = positive(b["epsilon"], "bump.epsilon");
    if (b.contains("n")) cfg.bump.n = b["n"].get<int>();
    if (b.contains("S")) cfg.bump.S = b["S"].get<int>();
    cfg.bump.validate();
  }
  if (j.contains("grids")) {
    const auto& g = j["grids"];
    require_keys(g, "grids",
                 {"t_min", "t_max", "t_count", "x_min", "x_max", "x_count", "R_schedule"});
    if (g.contains("t_min")) cfg.grids.t_min = g["t_min"].get<double>();
    if (g.contains("t_max")) cfg.grids.t_max = g["t_max"].get<double>();
    if (g.contains("t_count")) cfg.grids.t_count = g["t_count"].get<int>();
    if (g.contains("x_min")) cfg.grids.x_min = g["x_min"].get<double>();
    if (g.contains("x_max")) cfg.grids.x_max = g["x_max"].get<double>();
    if (g.contains("x_count")) cfg.grids.x_count = g["x_count"].get<int>();
    if (g.contains("R_schedule")) {
      cfg.grids.R_schedule.clear();
      for (const auto& r : g["R_schedule"]) {
        cfg.grids.R_schedule.push_back(positive(r, "grids.R_schedule"));
      }
    }
    if (cfg.grids.t_count < 1 || cfg.grids.x_count < 1) {
      throw config_error("grids: point counts must be >= 1");
    }
  }
  if (j.contains("truncations")) {
    const auto& t = j["truncations"];
    require_keys(t, "truncations", {"P", "patch_radius", "weight_floor"});
    if (t.contains("P")) cfg.truncations.P = positive(t["P"], "truncations.P");
    if (t.contains("patch_radius")) {
      cfg.truncations.patch_radius = positive(t["patch_radius"], "truncations.patch_radius");
    }
    if (t.contains("weight_floor")) {
      cfg.truncations.weight_floor = positive(t["weight_floor"], "truncations.weight_floor");
    }
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    require_keys(t, "tolerances",
                 {"poisson", "density", "bracket", "mean", "plancherel", "covariance",
                  "bessel_slack", "series", "certificate", "wexler_raz"});
    auto set = [&](const char* name, double& target) {
      if (t.contains(name)) target = positive(t[name], std::string("tolerances.") + name);
    };
    set("poisson", cfg.tolerances.poisson);
    set("density", cfg.tolerances.density);
    set("bracket", cfg.tolerances.bracket);
    set("mean", cfg.tolerances.mean);
    set("plancherel", cfg.tolerances.plancherel);
    set("covariance", cfg.tolerances.covariance);
    set("bessel_slack", cfg.tolerances.bessel_slack);
    set("series", cfg.tolerances.series);
    set("certificate", cfg.tolerances.certificate);
    set("wexler_raz", cfg.tolerances.wexler_raz);
  }
  if (!j.contains("seed")) throw config_error("seed: required for deterministic runs");
  cfg.seed = j["seed"].get<unsigned long long>();
  cfg.seed_present = true;

  if (j.contains("generators")) {
    for (const auto& g : j["generators"]) cfg.generators.push_back(parse_generator(g));
  }
  if (cfg.generators.empty()) cfg.generators.push_back(FourierFunction::unit_gaussian());
  if (j.contains("partner_generators")) {
    for (const auto& g : j["partner_generators"]) {
      cfg.partner_generators.push_back(parse_generator(g));
    }
  }
  if (j.contains("gabor")) {
    const auto& g = j["gabor"];
    require_keys(g, "gabor", {"A", "L", "beta_radius"});
    if (g.contains("A")) cfg.gabor.A = positive(g["A"], "gabor.A");
    if (g.contains("L")) cfg.gabor.L = g["L"].get<int>();
    if (g.contains("beta_radius")) {
      cfg.gabor.beta_radius = positive(g["beta_radius"], "gabor.beta_radius");
    }
  }
  return cfg;
}

namespace {

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);  // plain string
  }
}

void apply_override(json& root, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw config_error("override '" + spec + "': expected KEY=VALUE");
  }
  const std::string path = spec.substr(0, eq);
  json* node = &root;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw config_error("override '" + spec + "': empty key path");
  for (size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
  (*node)[parts.back()] = parse_override_value(spec.substr(eq + 1));
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path,
                                        const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  if (overrides.empty()) return parse(text);

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  ExperimentConfig cfg = parse(j.dump(2) + "\n");
  cfg.raw = text;  // echo the file as given; overrides are reported separately
  return cfg;
}

}  // namespace msf
