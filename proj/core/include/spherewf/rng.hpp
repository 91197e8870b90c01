#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spherewf {

using Rng = std::mt19937_64;

// Identifier embedded in run metadata so outputs name their generator.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+seed_seq(seed,stream)";

/// Independent generator for work item `stream` of a run seeded with
/// `master_seed`; identical arguments always yield an identical stream.
[[nodiscard]] Rng make_stream(std::uint64_t master_seed, std::uint64_t stream);

}  // namespace spherewf
