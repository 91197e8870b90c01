#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spherewf/report.hpp"

namespace spherewf {

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
  // Restricts the k-scanned checks (equivalence, odd_cancellation) to one k.
  std::optional<int> k;
};

// One function per acceptance criterion; each returns a single report whose
// `criterion` field holds the criterion number.
VerificationReport check_equivalence(const SuiteOptions& o);        // 1
VerificationReport check_odd_cancellation(const SuiteOptions& o);   // 2
VerificationReport check_exponent(const SuiteOptions& o);           // 3
VerificationReport check_prefactor(const SuiteOptions& o);          // 4
VerificationReport check_gegenbauer(const SuiteOptions& o);         // 5
VerificationReport check_kernel(const SuiteOptions& o);             // 6
VerificationReport check_simulation(const SuiteOptions& o);         // 7
VerificationReport check_isotropy(const SuiteOptions& o);           // 8
VerificationReport check_invariants(const SuiteOptions& o);         // 9
VerificationReport check_moran(const SuiteOptions& o);              // 10
VerificationReport check_stationary(const SuiteOptions& o);         // 11
VerificationReport check_controls(const SuiteOptions& o);           // 12

/// Suite names accepted by run_suite: one per criterion, "analytic" (every
/// check without Monte Carlo) and "all".
[[nodiscard]] std::vector<std::string> suite_names();

/// Runs the named suite; throws std::invalid_argument for an unknown name.
[[nodiscard]] std::vector<VerificationReport> run_suite(std::string_view name, const SuiteOptions& o);

}  // namespace spherewf
