#pragma once

#include <ostream>

namespace spherewf::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;

// Environment variable read for --seed when the flag is absent.
inline constexpr const char* kSeedEnv = "SPHEREWF_SEED";

/// Parses argv and runs the chosen subcommand. Output that is not directed to
/// a file by --output goes to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spherewf::cli
