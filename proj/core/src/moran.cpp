#include "spherewf/moran.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "spherewf/errors.hpp"

namespace spherewf {

MoranState MoranState::from_counts(std::vector<std::int64_t> counts, double lambda) {
  MoranState s;
  s.population = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  s.counts = std::move(counts);
  s.lambda = lambda;
  s.validate();
  return s;
}

void MoranState::validate() const {
  if (counts.size() < 2) throw DomainError("MoranState: need at least two allele types");
  if (!(lambda > 0.0)) throw DomainError("MoranState: lambda must be positive");
  if (population < 2) throw DomainError("MoranState: population must be >= 2");
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw DomainError("MoranState: negative count");
    total += c;
  }
  if (total != population) {
    throw DomainError("MoranState: counts sum to " + std::to_string(total) + ", population is " +
                      std::to_string(population));
  }
}

double MoranState::frequency(int i) const {
  return static_cast<double>(counts.at(static_cast<std::size_t>(i))) / static_cast<double>(population);
}

double MoranState::heterozygosity() const {
  double s = 0.0;
  for (int i = 0; i < k(); ++i) {
    const double x = frequency(i);
    s += x * x;
  }
  return 1.0 - s;
}

bool MoranState::monomorphic() const noexcept {
  return std::count_if(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; }) <= 1;
}

double moran_event_rate(const MoranState& s) { return s.lambda * static_cast<double>(s.population) / 2.0; }

namespace {

int type_of(const std::vector<std::int64_t>& counts, std::int64_t particle) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (particle < counts[i]) return static_cast<int>(i);
    particle -= counts[i];
  }
  return static_cast<int>(counts.size()) - 1;
}

}  // namespace

double moran_step_inplace(MoranState& s, Rng& rng) {
  const std::int64_t m = s.population;
  // Unordered pair of distinct particles: the first uniform over all, the
  // second uniform over the rest (particle indices above the first shift by one).
  const std::int64_t p1 = std::uniform_int_distribution<std::int64_t>(0, m - 1)(rng);
  std::int64_t p2 = std::uniform_int_distribution<std::int64_t>(0, m - 2)(rng);
  if (p2 >= p1) ++p2;
  const int a = type_of(s.counts, p1);
  const int b = type_of(s.counts, p2);
  if (a == b) return 0.0;
  const bool to_a = std::bernoulli_distribution(0.5)(rng);
  const int win = to_a ? a : b;
  const int lose = to_a ? b : a;
  ++s.counts[static_cast<std::size_t>(win)];
  --s.counts[static_cast<std::size_t>(lose)];
  const double dx = 1.0 / static_cast<double>(m);
  return 2.0 * dx * dx;
}

MoranState moran_step(const MoranState& s, Rng& rng) {
  s.validate();
  MoranState out = s;
  moran_step_inplace(out, rng);
  return out;
}

MoranTrajectory simulate_moran(const MoranState& s0, std::int64_t events, Rng& rng, std::int64_t record_every) {
  s0.validate();
  if (events < 0) throw DomainError("simulate_moran: events must be >= 0");
  if (record_every < 1) throw DomainError("simulate_moran: record_every must be >= 1");
  const double dt = 1.0 / moran_event_rate(s0);

  MoranTrajectory tr;
  MoranState s = s0;
  double jumps = 0.0;
  double h_integral = 0.0;
  auto record = [&](std::int64_t e) {
    tr.events.push_back(e);
    tr.times.push_back(static_cast<double>(e) * dt);
    tr.counts.push_back(s.counts);
    tr.heterozygosity.push_back(s.heterozygosity());
    tr.squared_jumps.push_back(jumps);
    tr.heterozygosity_integral.push_back(h_integral);
  };
  record(0);
  for (std::int64_t e = 1; e <= events; ++e) {
    h_integral += s.heterozygosity() * dt;
    jumps += moran_step_inplace(s, rng);
    if (e % record_every == 0 || e == events) record(e);
  }
  return tr;
}

}  // namespace spherewf
