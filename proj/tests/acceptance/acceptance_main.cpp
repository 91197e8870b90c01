// Runs every acceptance criterion and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "spherewf/acceptance.hpp"

namespace {

void print(const spherewf::VerificationReport& r) {
  std::string stats;
  for (const auto& [k, v] : r.statistics) {
    if (!stats.empty()) stats += ' ';
    stats += k + '=' + spherewf::format_real(v);
  }
  std::printf("[%s] criterion %2d %-16s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.criterion, r.name.c_str(),
              r.wall_time_s, stats.c_str());
  if (!r.detail.empty()) std::printf("       %s\n", r.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  spherewf::SuiteOptions options;
  if (const char* env = std::getenv("SPHEREWF_SEED")) options.seed = std::strtoull(env, nullptr, 10);
  const std::string suite = argc > 1 ? argv[1] : "all";

  // One criterion at a time so each line appears as soon as it is known.
  std::vector<std::string> names;
  if (suite == "all") {
    for (const auto& n : spherewf::suite_names()) {
      if (n != "all" && n != "analytic") names.push_back(n);
    }
  } else {
    names.push_back(suite);
  }

  int failed = 0;
  int total = 0;
  for (const auto& name : names) {
    for (const auto& r : spherewf::run_suite(name, options)) {
      print(r);
      ++total;
      if (!r.passed) ++failed;
    }
  }
  std::printf("%d criteria, %d failed\n", total, failed);
  return failed == 0 ? 0 : 1;
}
