#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "json.hpp"

#include "spherewf/report.hpp"

using namespace spherewf;

namespace {

VerificationReport sample_report() {
  VerificationReport r;
  r.name = "kernel";
  r.criterion = 6;
  r.param("k", 3.0).param("kind", "sphere");
  r.stat("residual", 2.5e-13).stat("bad", std::numeric_limits<double>::quiet_NaN());
  r.threshold = 1e-10;
  r.passed = true;
  r.wall_time_s = 0.25;
  r.detail = "ok";
  return r;
}

}  // namespace

TEST(Report, StatisticLookup) {
  const VerificationReport r = sample_report();
  EXPECT_EQ(r.statistic("residual"), 2.5e-13);
  EXPECT_THROW((void)r.statistic("missing"), std::out_of_range);
}

TEST(Report, JsonLineRoundTrips) {
  const std::string line = sample_report().to_json_line();
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["name"], "kernel");
  EXPECT_EQ(j["criterion"], 6);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["parameters"]["kind"], "sphere");
  EXPECT_EQ(j["statistics"]["residual"].get<double>(), 2.5e-13);
  EXPECT_TRUE(j["statistics"]["bad"].is_string());
}

TEST(Report, SummaryCsv) {
  const std::vector<VerificationReport> reports = {sample_report(), sample_report()};
  const std::string csv = summary_csv(reports);
  std::size_t lines = 0;
  for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) ++lines;
  EXPECT_EQ(lines, 3u);
  EXPECT_EQ(csv.rfind("name,", 0), 0u);
  const auto at = csv.find("residual=");
  ASSERT_NE(at, std::string::npos);
  EXPECT_EQ(std::stod(csv.substr(at + 9)), 2.5e-13);
}

TEST(Report, FormatRealRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-13, 12345678.9, -0.0, 1e300}) {
    EXPECT_EQ(std::stod(format_real(v)), v) << format_real(v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}
