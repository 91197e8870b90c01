#include "spherewf/rng.hpp"

namespace spherewf {

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(stream), hi(stream), 0x5eedu};
  return Rng(seq);
}

}  // namespace spherewf
