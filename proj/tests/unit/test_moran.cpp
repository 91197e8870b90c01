#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "spherewf/errors.hpp"
#include "spherewf/moran.hpp"
#include "spherewf/rng.hpp"
#include "spherewf/stats.hpp"

using namespace spherewf;

TEST(MoranState, Basics) {
  const MoranState s = MoranState::from_counts({30, 70});
  EXPECT_EQ(s.population, 100);
  EXPECT_DOUBLE_EQ(s.frequency(0), 0.3);
  EXPECT_DOUBLE_EQ(s.heterozygosity(), 2 * 0.3 * 0.7);
  EXPECT_FALSE(s.monomorphic());
  EXPECT_DOUBLE_EQ(moran_event_rate(s), 50.0);
  EXPECT_THROW(MoranState::from_counts({-1, 3}), DomainError);
}

TEST(MoranStep, MonomorphicIsAbsorbing) {
  Rng rng = make_stream(51, 0);
  const MoranState s = MoranState::from_counts({0, 100, 0});
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(moran_step(s, rng).counts, s.counts);
}

TEST(MoranStep, ConservesPopulationAndMovesOneParticle) {
  Rng rng = make_stream(52, 0);
  MoranState s = MoranState::from_counts({10, 20, 30, 40});
  for (int i = 0; i < 20000; ++i) {
    const MoranState next = moran_step(s, rng);
    ASSERT_EQ(std::accumulate(next.counts.begin(), next.counts.end(), std::int64_t{0}), 100);
    std::int64_t moved = 0;
    for (int j = 0; j < 4; ++j) {
      ASSERT_GE(next.counts[j], 0);
      moved += std::abs(next.counts[j] - s.counts[j]);
    }
    ASSERT_TRUE(moved == 0 || moved == 2);
    s = next;
  }
}

TEST(MoranStep, SquaredJumpIsExact) {
  Rng rng = make_stream(53, 0);
  MoranState s = MoranState::from_counts({40, 60});
  for (int i = 0; i < 1000; ++i) {
    const MoranState before = s;
    const double q = moran_step_inplace(s, rng);
    double direct = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double d = s.frequency(j) - before.frequency(j);
      direct += d * d;
    }
    ASSERT_NEAR(q, direct, 1e-15);
  }
}

TEST(SimulateMoran, RecordsAndTimes) {
  Rng rng = make_stream(54, 0);
  const MoranState s = MoranState::from_counts({50, 50}, 2.0);
  const MoranTrajectory tr = simulate_moran(s, 1000, rng, 300);
  const std::vector<std::int64_t> expected = {0, 300, 600, 900, 1000};
  EXPECT_EQ(tr.events, expected);
  ASSERT_EQ(tr.times.size(), expected.size());
  EXPECT_DOUBLE_EQ(tr.times.back(), 1000 / 100.0);
  EXPECT_EQ(tr.counts.front(), s.counts);
  EXPECT_DOUBLE_EQ(tr.heterozygosity.front(), 0.5);
  EXPECT_EQ(tr.squared_jumps.front(), 0.0);
}

TEST(SimulateMoran, HeterozygosityDecayRate) {
  // With 2N particles and per-particle rate lambda, E[h(t)] = h0 exp(-lambda t / (2N - 1)).
  const std::int64_t M = 200;
  const double lambda = 1.0;
  const double t = 50.0;
  const MoranState s = MoranState::from_counts({M / 2, M / 2}, lambda);
  const auto events = static_cast<std::int64_t>(std::llround(t * moran_event_rate(s)));
  RunningStats h;
  for (std::uint64_t r = 0; r < 2000; ++r) {
    Rng rng = make_stream(55, r);
    const MoranTrajectory tr = simulate_moran(s, events, rng, events);
    h.add(tr.heterozygosity.back());
  }
  const double expected = 0.5 * std::exp(-lambda * t / (M - 1.0));
  EXPECT_NEAR(h.mean(), expected, 5 * h.standard_error());
}
