#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spherewf {

/// Outcome of one verification check, serializable as a JSON line.
struct VerificationReport {
  std::string name;       // check identifier, e.g. "equivalence"
  int criterion = 0;      // acceptance criterion number, 0 for ad-hoc checks
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, double>> statistics;
  double threshold = 0.0;
  bool passed = false;
  double wall_time_s = 0.0;
  std::string detail;

  VerificationReport& param(std::string key, std::string value);
  VerificationReport& param(std::string key, double value);
  VerificationReport& stat(std::string key, double value);
  [[nodiscard]] double statistic(const std::string& key) const;

  [[nodiscard]] std::string to_json_line() const;
};

/// CSV table with one row per report: name, criterion, passed, threshold,
/// wall_time_s, statistics (as key=value pairs joined by ';'), detail.
[[nodiscard]] std::string summary_csv(std::span<const VerificationReport> reports);

/// 17 significant digits, enough to round-trip any double.
[[nodiscard]] std::string format_real(double v);

}  // namespace spherewf
