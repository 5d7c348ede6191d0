#pragma once

#include "msf/config.hpp"

namespace msf {

json to_json(const TruncationInfo& t);
json to_json(const ResidualReport& r);
json to_json(const MeanEstimate& m);
json to_json(const CertificateReport& c);
json to_json(const WexlerRazReport& w);
json to_json(const DensityRecord& d);
json to_json(const DensityEstimate& d);
json to_json(const BesselBound& b);

/// Assembles report.json: config echo, applied overrides, one entry per
/// executed check. Timing is deliberately excluded so identical configs give
/// byte-identical documents.
class ReportDocument {
 public:
  ReportDocument(std::string subcommand, const ExperimentConfig& config,
                 const std::vector<std::string>& overrides);

  void add_check(const std::string& name, json report, bool pass);
  bool all_pass() const { return all_pass_; }

  void write(const std::string& out_dir) const;
  std::string dump() const;

 private:
  json doc_;
  bool all_pass_ = true;
};

/// CSV with '.' decimals, LF line endings, mandatory header.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace msf
