#include "spherewf/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace spherewf {

VerificationReport& VerificationReport::param(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
  return *this;
}

VerificationReport& VerificationReport::param(std::string key, double value) {
  return param(std::move(key), format_real(value));
}

VerificationReport& VerificationReport::stat(std::string key, double value) {
  statistics.emplace_back(std::move(key), value);
  return *this;
}

double VerificationReport::statistic(const std::string& key) const {
  for (const auto& [k, v] : statistics) {
    if (k == key) return v;
  }
  throw std::out_of_range("VerificationReport: no statistic named " + key);
}

namespace {

nlohmann::json real_json(double v) {
  // JSON has no representation for non-finite numbers.
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string VerificationReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["criterion"] = criterion;
  j["passed"] = passed;
  j["threshold"] = real_json(threshold);
  j["wall_time_s"] = real_json(wall_time_s);
  auto& p = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) p[k] = v;
  auto& s = j["statistics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : statistics) s[k] = real_json(v);
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                 std::numeric_limits<double>::max_digits10);
  return std::string(buf, res.ptr);
}

std::string summary_csv(std::span<const VerificationReport> reports) {
  std::ostringstream os;
  os << "name,criterion,passed,threshold,wall_time_s,statistics,detail\r\n";
  for (const auto& r : reports) {
    std::string stats;
    for (const auto& [k, v] : r.statistics) {
      if (!stats.empty()) stats += ';';
      stats += k + '=' + format_real(v);
    }
    os << csv_field(r.name) << ',' << r.criterion << ',' << (r.passed ? "true" : "false") << ','
       << format_real(r.threshold) << ',' << format_real(r.wall_time_s) << ',' << csv_field(stats) << ','
       << csv_field(r.detail) << "\r\n";
  }
  return os.str();
}

}  // namespace spherewf
