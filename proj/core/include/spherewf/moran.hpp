#pragma once

#include <cstdint>
#include <vector>

#include "spherewf/rng.hpp"

namespace spherewf {

/// Allele counts of the interacting-particle (Moran) model.
///
/// `population` is the total particle count, i.e. 2N for a diploid
/// population of N individuals; `lambda` is the per-particle event rate.
struct MoranState {
  std::vector<std::int64_t> counts;
  std::int64_t population = 0;
  double lambda = 1.0;

  // Builds a state with population = sum(counts).
  static MoranState from_counts(std::vector<std::int64_t> counts, double lambda = 1.0);

  void validate() const;
  [[nodiscard]] int k() const noexcept { return static_cast<int>(counts.size()); }
  [[nodiscard]] double frequency(int i) const;
  // 1 - sum x_i^2, which is 2x(1-x) for two alleles.
  [[nodiscard]] double heterozygosity() const;
  [[nodiscard]] bool monomorphic() const noexcept;
};

/// Pair events per unit time, lambda * population / 2 (lambda N for a
/// population of N diploid individuals).
[[nodiscard]] double moran_event_rate(const MoranState& s);

/// Outcome of one pair event on `s`, in place: an unordered pair of distinct
/// particles is drawn uniformly; if their types differ, both adopt one of the
/// two types with probability 1/2 each. Returns the change in the squared
/// frequency vector, sum_i (dx_i)^2.
double moran_step_inplace(MoranState& s, Rng& rng);

[[nodiscard]] MoranState moran_step(const MoranState& s, Rng& rng);

struct MoranTrajectory {
  std::vector<std::int64_t> events;
  std::vector<double> times;  // expected elapsed time, events / event rate
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<double> heterozygosity;
  // Running sum over events of sum_i (dx_i)^2 up to each record.
  std::vector<double> squared_jumps;
  // Running integral of heterozygosity over time up to each record.
  std::vector<double> heterozygosity_integral;
};

/// Runs `events` pair events from s0, recording every `record_every`-th event
/// as well as the start and the end.
[[nodiscard]] MoranTrajectory simulate_moran(const MoranState& s0, std::int64_t events, Rng& rng,
                                             std::int64_t record_every = 1);

}  // namespace spherewf
