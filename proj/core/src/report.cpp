#include "msf/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace msf {

namespace {

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json(const TruncationInfo& t) {
  json j;
  j["patch_radius"] = t.patch_radius;
  j["dual_floor"] = t.dual_floor;
  j["dual_p2s_cutoff"] = t.dual_p2s_cutoff;
  j["quadrature_spacing"] = t.quadrature_spacing;
  json box = json::array();
  for (const auto& [lo, hi] : t.dual_box) box.push_back(json::array({lo, hi}));
  j["dual_box"] = box;
  j["tail_estimate"] = t.tail_estimate;
  return j;
}

json to_json(const ResidualReport& r) {
  json j;
  j["grid"] = r.grid;
  j["residuals"] = r.residuals;
  j["max_abs_residual"] = r.max_abs_residual;
  j["truncation"] = to_json(r.truncation);
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

json to_json(const MeanEstimate& m) {
  json j;
  j["value"] = complex_json(m.value);
  j["schedule"] = m.schedule;
  json vals = json::array();
  for (const auto& v : m.values) vals.push_back(complex_json(v));
  j["values"] = vals;
  j["residuals"] = m.residuals;
  return j;
}

json to_json(const CertificateReport& c) {
  json j;
  j["equation"] = c.equation;
  j["max_residual_zero"] = c.max_residual_zero;
  j["max_residual_nonzero"] = c.max_residual_nonzero;
  if (c.equation == "tight-bessel") j["empirical_bound"] = c.empirical_bound;
  j["truncation"] = to_json(c.truncation);
  j["tolerance"] = c.tolerance;
  j["verdict"] = c.pass ? "pass" : "fail";
  return j;
}

json to_json(const WexlerRazReport& w) {
  json j;
  json entries = json::array();
  for (const auto& e : w.entries) {
    json entry;
    entry["eta"] = json::array({e.eta_coords[0], e.eta_coords[1]});
    entry["p1s"] = e.p1s;
    entry["p2s"] = e.p2s;
    entry["v"] = e.v;
    entry["value"] = complex_json(e.value);
    entry["residual"] = e.residual;
    entry["identity_residual"] = e.identity_residual;
    entries.push_back(std::move(entry));
  }
  j["entries"] = entries;
  j["max_residual"] = w.max_residual;
  j["max_identity_residual"] = w.max_identity_residual;
  j["tolerance"] = w.tolerance;
  j["biorthogonal"] = w.pass;
  j["identity_verdict"] = w.max_identity_residual <= w.tolerance ? "pass" : "fail";
  return j;
}

json to_json(const DensityRecord& d) {
  json j;
  j["formula_density"] = d.formula_density;
  j["empirical_density"] = d.empirical_density;
  j["det_A"] = d.det_A;
  j["margin"] = d.margin;
  j["pass"] = d.pass;
  j["anomaly"] = d.anomaly;
  return j;
}

json to_json(const DensityEstimate& d) {
  json j;
  json samples = json::array();
  for (const auto& [R, v] : d.samples) samples.push_back(json::array({R, v}));
  j["samples"] = samples;
  j["extrapolated"] = d.extrapolated;
  j["formula"] = d.formula;
  return j;
}

json to_json(const BesselBound& b) {
  json j;
  j["B"] = b.B;
  j["bound"] = b.bound;
  j["max_ratio"] = b.max_ratio;
  j["trials_ok"] = b.trials_ok;
  return j;
}

ReportDocument::ReportDocument(std::string subcommand, const ExperimentConfig& config,
                               const std::vector<std::string>& overrides) {
  doc_["subcommand"] = std::move(subcommand);
  doc_["version"] = "0.1.0";
  doc_["config_echo"] = config.raw;
  doc_["overrides"] = overrides;
  doc_["checks"] = json::object();
}

void ReportDocument::add_check(const std::string& name, json report, bool pass) {
  doc_["checks"][name] = std::move(report);
  if (!pass) all_pass_ = false;
}

std::string ReportDocument::dump() const {
  json j = doc_;
  j["all_pass"] = all_pass_;
  return j.dump(2) + "\n";
}

void ReportDocument::write(const std::string& out_dir) const {
  std::ofstream out(out_dir + "/report.json", std::ios::binary);
  if (!out) throw error("cannot write report to " + out_dir);
  out << dump();
}

std::string format_double(double v) {
  // Shortest representation that round-trips, locale-independent. Moderate
  // integers are printed plainly so schedule columns stay readable.
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char ibuf[32];
    std::snprintf(ibuf, sizeof(ibuf), "%.0f", v);
    return ibuf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = std::strtod(buf, nullptr);
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == parsed) return shorter;
  }
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write csv: " + path);
  for (size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
}

}  // namespace msf
