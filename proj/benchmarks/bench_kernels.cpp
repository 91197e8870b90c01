#include <vector>

#include <benchmark/benchmark.h>

#include "spherewf/rng.hpp"
#include "spherewf/simulate.hpp"
#include "spherewf/sphere_heat.hpp"
#include "spherewf/wf_density.hpp"

using namespace spherewf;

namespace {

void BM_ZonalKernel(benchmark::State& state) {
  const ZonalHeatKernel kernel(static_cast<int>(state.range(0)), 0.1, 0.125, Truncation{});
  double u = -0.999;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(u));
    u = u > 0.999 ? -0.999 : u + 1e-3;
  }
}
BENCHMARK(BM_ZonalKernel)->Arg(3)->Arg(4)->Arg(6);

void BM_HeatKernel(benchmark::State& state) {
  SphereKernelQuery q{SpherePoint({0.6, 0.0, 0.8}), SpherePoint::pole(3), state.range(0) / 100.0};
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel(q));
}
BENCHMARK(BM_HeatKernel)->Arg(5)->Arg(50);

void BM_Griffiths(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<double> x(k, 1.0 / k);
  std::vector<double> xp(k, 0.5 / (k - 1));
  x[0] += 0.05;
  x[1] -= 0.05;
  xp[0] = 0.5;
  GriffithsQuery q{SimplexPoint(x), SimplexPoint(xp), 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(griffiths_density(q));
}
BENCHMARK(BM_Griffiths)->Arg(3)->Arg(4);

void BM_Pushforward(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<double> x(k, 1.0 / k);
  std::vector<double> xp(k, 0.5 / (k - 1));
  x[0] += 0.05;
  x[1] -= 0.05;
  xp[0] = 0.5;
  PushforwardQuery q{SimplexPoint(x), SimplexPoint(xp), 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(pushforward_density(q));
}
BENCHMARK(BM_Pushforward)->Arg(3)->Arg(4)->Arg(6);

void BM_SphereStep(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng = make_stream(1, 0);
  std::normal_distribution<double> normal;
  SkewIncrements db(k);
  std::vector<double> y(k, 0.0);
  y[0] = 1.0;
  for (auto _ : state) {
    db.draw(1e-4, rng, normal);
    benchmark::DoNotOptimize(sphere_step_inplace(y, 1e-4, 1.0, db));
  }
}
BENCHMARK(BM_SphereStep)->Arg(3)->Arg(8);

void BM_SimplexStep(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ModelParams p(k, 1.0, 0.5);
  Rng rng = make_stream(2, 0);
  std::normal_distribution<double> normal;
  SkewIncrements db(k);
  std::vector<double> x(k, 1.0 / k);
  for (auto _ : state) {
    db.draw(1e-4, rng, normal);
    benchmark::DoNotOptimize(simplex_step_inplace(Model::WFIsotropic, x, 1e-4, p, db));
  }
}
BENCHMARK(BM_SimplexStep)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
