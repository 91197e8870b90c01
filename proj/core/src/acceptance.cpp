#include "spherewf/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/legendre.hpp>

#include "spherewf/harness.hpp"
#include "spherewf/moran.hpp"
#include "spherewf/simulate.hpp"
#include "spherewf/specfun.hpp"
#include "spherewf/sphere_heat.hpp"
#include "spherewf/stats.hpp"
#include "spherewf/wf_density.hpp"

namespace spherewf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> ks_for(const SuiteOptions& o, std::initializer_list<int> defaults) {
  if (o.k) return {*o.k};
  return defaults;
}

VerificationReport make_report(std::string name, int criterion, const SuiteOptions& o) {
  VerificationReport r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.param("seed", std::to_string(o.seed));
  return r;
}

void absorb(VerificationReport& into, const VerificationReport& from, const std::string& prefix) {
  for (const auto& [k, v] : from.statistics) into.stat(prefix + k, v);
  if (!from.detail.empty()) into.detail += (into.detail.empty() ? "" : "; ") + prefix + from.detail;
}

const std::vector<double> kEquivalenceTimes = {0.05, 0.1, 0.5, 1.0, 5.0};

// Exact check of (1/8) 2n(2n+k-2) = n(n-1)/2 + (k/2) n/2, with `scale`
// replacing 1/8. Returns the number of (n, k) pairs that disagree.
int exponent_mismatches(double scale) {
  int bad = 0;
  for (int k = 2; k <= 10; ++k) {
    for (int n = 0; n <= 50; ++n) {
      const double lhs = pushforward_rate(2 * n, k, scale);
      const double rhs = griffiths_rate(n, 0.5 * k);
      if (lhs != rhs) ++bad;
    }
  }
  return bad;
}

}  // namespace

VerificationReport check_equivalence(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("equivalence", 1, o);
  r.threshold = 1e-6;
  r.passed = true;
  double worst = 0.0;
  for (int k : ks_for(o, {3, 4})) {
    EquivalenceOptions eo;
    eo.threads = o.threads;
    const VerificationReport s = equivalence_scan(k, kEquivalenceTimes, 50, o.seed + static_cast<std::uint64_t>(k), eo);
    absorb(r, s, "k" + std::to_string(k) + "_");
    worst = std::max(worst, s.statistic("max_rel_diff"));
    r.passed = r.passed && s.passed;
  }
  r.stat("max_rel_diff", worst);
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_odd_cancellation(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("odd_cancellation", 2, o);
  r.threshold = 1e-12;
  double worst = 0.0;
  bool converged = true;
  for (int k : ks_for(o, {3, 4})) {
    for (double t : {0.1, 1.0}) {
      for (int i = 0; i < 20; ++i) {
        Rng rng = make_stream(o.seed, 1000 * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(i));
        const SimplexPoint x = random_interior_point(k, rng);
        const SimplexPoint xp = random_interior_point(k, rng);
        const PushforwardValue v = pushforward_density({x, xp, t});
        converged = converged && v.converged;
        worst = std::max(worst, std::abs(v.odd_sum) / std::abs(v.even_sum));
      }
    }
  }
  r.stat("max_odd_over_even", worst);
  r.passed = converged && worst < r.threshold;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_exponent(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("exponent", 3, o);
  r.threshold = 0.0;
  // Same identity in integers, times 8: 2n(2n+k-2) = 4n(n-1) + 2kn.
  int int_bad = 0;
  for (long k = 2; k <= 10; ++k) {
    for (long n = 0; n <= 50; ++n) {
      if (2 * n * (2 * n + k - 2) != 4 * n * (n - 1) + 2 * k * n) ++int_bad;
    }
  }
  const int bad = exponent_mismatches(0.125);
  r.stat("mismatches", bad).stat("integer_mismatches", int_bad).stat("pairs_checked", 9 * 51);
  r.passed = bad == 0 && int_bad == 0;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_prefactor(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("prefactor", 4, o);
  r.threshold = 1e-13;
  double worst = 0.0;
  Rng rng = make_stream(o.seed, 4);
  for (int i = 0; i < 1000; ++i) {
    const int k = 2 + i % 5;
    const SimplexPoint x = random_interior_point(k, rng, 0.0);
    double prod = 1.0;
    for (double v : x.coords()) prod *= v;
    const double lhs = std::tgamma(0.5 * k) / std::pow(std::numbers::pi, 0.5 * k) / std::sqrt(prod);
    const std::vector<double> eps(static_cast<std::size_t>(k), 0.5);
    const double rhs = dirichlet_stationary(x, eps);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  r.stat("max_rel_diff", worst).stat("points", 1000);
  r.passed = worst < r.threshold;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_gegenbauer(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("gegenbauer", 5, o);
  r.threshold = 1e-11;

  double explicit_diff = 0.0;
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    for (int zi = -10; zi <= 10; ++zi) {
      const double z = 0.1 * zi;
      for (int L = 0; L <= 40; ++L) {
        const double a = gegenbauer(L, p, z);
        const double b = gegenbauer_explicit(L, p, z);
        explicit_diff = std::max(explicit_diff, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
    }
  }

  double gf_residual = 0.0;
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    for (int zi = -10; zi <= 10; ++zi) {
      for (int hi = -5; hi <= 5; ++hi) {
        gf_residual = std::max(gf_residual, generating_function_residual(p, 0.1 * zi, 0.1 * hi, 60));
      }
    }
  }

  // k = 3 kernel against sum (2L+1) P_L(u) exp(-D L(L+1) t) with Boost's Legendre P_L.
  double legendre_diff = 0.0;
  Rng rng = make_stream(o.seed, 5);
  std::uniform_real_distribution<double> ucos(-1.0, 1.0);
  std::uniform_real_distribution<double> ut(0.05, 5.0);
  const double D = 0.125;
  for (int i = 0; i < 100; ++i) {
    const double u = ucos(rng);
    const double t = ut(rng);
    double oracle = 0.0;
    for (int L = 0; L <= 400; ++L) {
      const double decay = std::exp(-D * L * (L + 1.0) * t);
      if (decay < 1e-300) break;
      oracle += (2.0 * L + 1.0) * boost::math::legendre_p(L, u) * decay;
    }
    const SeriesValue v = ZonalHeatKernel(3, t, D, Truncation{})(u);
    legendre_diff = std::max(legendre_diff, std::abs(v.value - oracle) / std::max(1.0, std::abs(oracle)));
  }

  r.stat("explicit_sum_max_diff", explicit_diff)
      .stat("generating_function_max_residual", gf_residual)
      .stat("legendre_max_diff", legendre_diff);
  r.passed = explicit_diff < 1e-11 && gf_residual < 1e-8 && legendre_diff < 1e-12;
  r.detail = "thresholds: explicit 1e-11, generating function 1e-8, legendre 1e-12";
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_kernel(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("kernel", 6, o);
  r.threshold = 1e-8;
  bool ok = true;
  bool converged = true;

  double sphere_norm = 0.0;
  for (double t : {0.05, 0.5, 5.0}) {
    const QuadratureCheck q = normalization_check(KernelKind::Sphere, 3, t, 128);
    sphere_norm = std::max(sphere_norm, q.residual);
    converged = converged && q.converged;
  }
  ok = ok && sphere_norm < 1e-8;

  double wf_norm = 0.0;
  for (double t : {0.1, 1.0}) {
    const QuadratureCheck q = normalization_check(KernelKind::WF, 3, t, 32);
    wf_norm = std::max(wf_norm, q.residual);
    converged = converged && q.converged;
  }
  ok = ok && wf_norm < 5e-3;

  Rng rng = make_stream(o.seed, 6);
  const SpherePoint ya = sample_uniform_sphere(3, rng);
  const SpherePoint yb = sample_uniform_sphere(3, rng);
  const QuadratureCheck ck_sphere = chapman_kolmogorov(KernelKind::Sphere, 3, 0.5, 0.5, ya.coords(), yb.coords(), 128);
  converged = converged && ck_sphere.converged;
  ok = ok && ck_sphere.residual < 1e-6;

  const SimplexPoint xa = random_interior_point(3, rng, 0.05);
  const SimplexPoint xb = random_interior_point(3, rng, 0.05);
  const QuadratureCheck ck_wf = chapman_kolmogorov(KernelKind::WF, 3, 0.5, 0.5, xa.coords(), xb.coords(), 32);
  converged = converged && ck_wf.converged;
  ok = ok && ck_wf.residual < 1e-3;

  // Stationary limits at t = 1e3.
  double sphere_limit = 0.0;
  double wf_limit = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int k = 3 + i % 2;
    const SpherePoint y = sample_uniform_sphere(k, rng);
    const SpherePoint yp = sample_uniform_sphere(k, rng);
    const SeriesValue h = heat_kernel({y, yp, 1e3});
    sphere_limit = std::max(sphere_limit, std::abs(h.value - 1.0));
    const SimplexPoint x = random_interior_point(k, rng);
    const SimplexPoint xp = random_interior_point(k, rng);
    const std::vector<double> eps(static_cast<std::size_t>(k), 0.5);
    const double stationary = dirichlet_stationary(x, eps);
    const PushforwardValue p = pushforward_density({x, xp, 1e3});
    const DensityValue g = griffiths_density({x, xp, 1e3, 0.5});
    wf_limit = std::max({wf_limit, std::abs(p.value - stationary) / stationary, std::abs(g.value - stationary) / stationary});
    converged = converged && h.converged && p.converged && g.converged;
  }
  ok = ok && sphere_limit < 1e-12 && wf_limit < 1e-12;

  r.stat("sphere_normalization_residual", sphere_norm)
      .stat("wf_normalization_residual", wf_norm)
      .stat("sphere_ck_residual", ck_sphere.residual)
      .stat("sphere_ck_order_flag", ck_sphere.order_flag)
      .stat("wf_ck_residual", ck_wf.residual)
      .stat("wf_ck_order_flag", ck_wf.order_flag)
      .stat("sphere_stationary_diff", sphere_limit)
      .stat("wf_stationary_rel_diff", wf_limit);
  r.detail =
      "thresholds: sphere normalization 1e-8, wf normalization 5e-3, sphere CK 1e-6, wf CK 1e-3, stationary limits "
      "1e-12";
  r.passed = ok && converged;
  if (!converged) r.detail += "; evaluator reported non-convergence";
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_simulation(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("simulation", 7, o);
  r.threshold = 0.01;
  McOptions mc;
  mc.threads = o.threads;
  const VerificationReport sphere = mc_sphere_zonal(3, o.seed + 7, mc);
  mc.n_paths = 10000;
  const VerificationReport wf = mc_wf_pushforward(SimplexPoint({0.5, 0.3, 0.2}), o.seed + 77, mc);
  absorb(r, sphere, "sphere_");
  absorb(r, wf, "wf_");
  r.passed = sphere.passed && wf.passed;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_isotropy(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("isotropy", 8, o);
  r.threshold = 5.0;
  const int k = 3;
  const double c = 1.0;
  const double dt = 1e-4;
  const std::size_t n = 100000;
  Rng rng = make_stream(o.seed, 8);
  const SpherePoint y = sample_uniform_sphere(k, rng);

  std::vector<double> dy(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const SphereStep s = step_sphere(y, dt, c, rng);
    for (int j = 0; j < k; ++j) dy[i * k + j] = s.y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
  }

  const double expected = 0.25 * c * c * dt;
  double worst_z = 0.0;
  std::normal_distribution<double> normal;
  std::vector<double> proj(n);
  for (int d = 0; d < 20; ++d) {
    double l[3];
    double dot = 0.0;
    for (int j = 0; j < k; ++j) {
      l[j] = normal(rng);
      dot += l[j] * y[static_cast<std::size_t>(j)];
    }
    double norm = 0.0;
    for (int j = 0; j < k; ++j) {
      l[j] -= dot * y[static_cast<std::size_t>(j)];
      norm += l[j] * l[j];
    }
    norm = std::sqrt(norm);
    RunningStats st;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (int j = 0; j < k; ++j) v += l[j] / norm * dy[i * k + j];
      proj[i] = v;
      st.add(v);
    }
    const double z = std::abs(st.variance() - expected) / variance_standard_error(proj);
    worst_z = std::max(worst_z, z);
  }
  r.param("dt", dt).param("c", c);
  r.stat("max_standard_errors", worst_z).stat("expected_variance", expected).stat("directions", 20);
  r.passed = worst_z < r.threshold;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_invariants(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("invariants", 9, o);
  r.threshold = 1e-12;

  // Pre-clamp simplex conservation for the neutral and mutation equations.
  double sum_defect = 0.0;
  struct Case {
    Model model;
    ModelParams params;
  };
  const std::vector<Case> cases = {
      {Model::WFNeutral, ModelParams(3, 1.0, 0.0)},
      {Model::WFNeutral, ModelParams(5, 0.7, 0.0)},
      {Model::WFMutation, ModelParams(3, 1.0, std::vector<double>{0.5, 1.0, 2.0})},
      {Model::WFMutation, ModelParams(4, 1.0, 0.5)},
  };
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& cs = cases[ci];
    for (int p = 0; p < 8; ++p) {
      Rng rng = make_stream(o.seed, 900 + 10 * ci + static_cast<std::uint64_t>(p));
      const SimplexPoint x0 = random_interior_point(cs.params.k(), rng, 0.05);
      PathDiagnostics diag;
      (void)simulate_terminal(cs.model, x0.coords(), 1.0, 1e-4, cs.params, rng, &diag);
      sum_defect = std::max(sum_defect, diag.max_defect);
    }
  }

  // Sphere projection defect against dt.
  const ModelParams sp(3, 1.0, 0.5);
  const double dts[] = {4e-4, 2e-4, 1e-4};
  double mean_defect[3];
  double max_defect = 0.0;
  for (int d = 0; d < 3; ++d) {
    RunningStats st;
    for (int p = 0; p < 16; ++p) {
      Rng rng = make_stream(o.seed, 950 + static_cast<std::uint64_t>(p));
      const SpherePoint y0 = sample_uniform_sphere(3, rng);
      PathDiagnostics diag;
      (void)simulate_terminal(Model::Sphere, y0.coords(), 1.0, dts[d], sp, rng, &diag);
      st.add(diag.mean_defect);
      if (d == 2) max_defect = std::max(max_defect, diag.max_defect);
    }
    mean_defect[d] = st.mean();
  }
  const double ratio_a = mean_defect[0] / mean_defect[1];
  const double ratio_b = mean_defect[1] / mean_defect[2];
  auto halves = [](double ratio) { return ratio >= 1.6 && ratio <= 2.4; };

  r.stat("max_preclamp_sum_defect", sum_defect)
      .stat("sphere_mean_defect_dt1e-4", mean_defect[2])
      .stat("sphere_max_defect_dt1e-4", max_defect)
      .stat("defect_ratio_4e-4_over_2e-4", ratio_a)
      .stat("defect_ratio_2e-4_over_1e-4", ratio_b);
  r.detail = "thresholds: sum defect 1e-12, sphere mean defect 1e-3, halving ratio in [1.6, 2.4]";
  r.passed = sum_defect < 1e-12 && mean_defect[2] < 1e-3 && halves(ratio_a) && halves(ratio_b);
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_moran(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("moran", 10, o);
  r.threshold = 0.10;
  const int replicates = 200;
  const std::int64_t N = 100;  // diploid individuals: 2N particles
  const double lambda = 1.0;
  const double predicted = 2.0 * static_cast<double>(N) / lambda;  // 1/c^2
  const double T = 2.0 * predicted;
  const MoranState s0 = MoranState::from_counts({N, N}, lambda);
  const auto events = static_cast<std::int64_t>(std::llround(moran_event_rate(s0) * T));
  const std::int64_t record_every = events / 200;

  std::vector<MoranTrajectory> runs(replicates);
  parallel_for(static_cast<std::size_t>(replicates), o.threads, [&](std::size_t i) {
    Rng rng = make_stream(o.seed + 10, i);
    runs[i] = simulate_moran(s0, events, rng, record_every);
  });

  // dE[H]/dt = -E[d(sum_i dx_i^2)/dt], so the decay rate of mean heterozygosity
  // is (total squared jumps) / (integrated heterozygosity), summed over
  // replicates.
  double jumps = 0.0;
  double h_int = 0.0;
  double h_end = 0.0;
  const std::size_t n_rec = runs[0].times.size();
  std::vector<double> mean_h(n_rec, 0.0);
  for (const auto& tr : runs) {
    jumps += tr.squared_jumps.back();
    h_int += tr.heterozygosity_integral.back();
    h_end += tr.heterozygosity.back();
    for (std::size_t j = 0; j < n_rec; ++j) mean_h[j] += tr.heterozygosity[j] / replicates;
  }
  const double rate = jumps / h_int;
  const double efold = 1.0 / rate;
  const double h0 = s0.heterozygosity();
  const double direct_efold = h_int / (replicates * h0 - h_end);

  std::vector<double> log_h(n_rec);
  for (std::size_t j = 0; j < n_rec; ++j) log_h[j] = std::log(mean_h[j]);
  const LinearFit fit = linear_fit(runs[0].times, log_h);

  const double rel = std::abs(efold / predicted - 1.0);
  r.param("N", std::to_string(N)).param("lambda", lambda).param("replicates", std::to_string(replicates)).param("T", T);
  r.stat("efold_time", efold)
      .stat("predicted_efold_time", predicted)
      .stat("rel_error", rel)
      .stat("direct_moment_efold_time", direct_efold)
      .stat("loglinear_fit_efold_time", -1.0 / fit.slope);
  r.detail = "gate: e-fold time from squared-jump / integrated-heterozygosity ratio";
  r.passed = rel < r.threshold;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_stationary(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("stationary", 11, o);
  r.threshold = 0.01;
  const ModelParams params(2, 1.0, std::vector<double>{2.0, 2.0});
  const int n_paths = 64;
  const double T = 200.0;
  const double dt = 1e-3;
  const double burn_in = 10.0;
  const double thin = 5.0;
  const int stride = static_cast<int>(std::llround(thin / dt));

  auto attempt = [&](std::uint64_t seed) {
    std::vector<std::vector<double>> per_path(n_paths);
    std::vector<std::int64_t> clamps(n_paths);
    parallel_for(n_paths, o.threads, [&](std::size_t i) {
      Rng rng = make_stream(seed, i);
      const std::vector<double> x0 = {0.5, 0.5};
      const PathRecord rec = simulate_path(Model::WFMutation, x0, T, dt, params, rng, stride);
      for (std::size_t j = 0; j < rec.times.size(); ++j) {
        if (rec.times[j] >= burn_in - 1e-9) per_path[i].push_back(rec.states[j][0]);
      }
      clamps[i] = rec.diagnostics.clamp_count;
    });
    std::vector<double> sample;
    for (const auto& v : per_path) sample.insert(sample.end(), v.begin(), v.end());
    std::int64_t total_clamps = 0;
    for (auto c : clamps) total_clamps += c;
    const KsResult ks = ks_one_sample(sample, [](double x) {
      x = std::clamp(x, 0.0, 1.0);
      return x * x * (3.0 - 2.0 * x);
    });
    return std::pair{ks, total_clamps};
  };

  auto [ks, clamps] = attempt(o.seed + 11);
  const double first_p = ks.p_value;
  int attempts = 1;
  if (ks.p_value < r.threshold) {
    std::tie(ks, clamps) = attempt(retry_seed(o.seed + 11));
    attempts = 2;
  }
  r.param("epsilon", "2;2").param("T", T).param("dt", dt).param("paths", std::to_string(n_paths));
  r.stat("ks_statistic", ks.statistic)
      .stat("p_value", ks.p_value)
      .stat("samples", ks.n_effective)
      .stat("attempts", attempts)
      .stat("first_p_value", first_p)
      .stat("clamp_count", static_cast<double>(clamps));
  r.passed = ks.p_value >= r.threshold;
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport check_controls(const SuiteOptions& o) {
  const auto start = Clock::now();
  auto r = make_report("controls", 12, o);
  r.threshold = 1e-6;
  const std::vector<double> ts = {0.1, 0.5, 1.0};

  EquivalenceOptions wrong_eps;
  wrong_eps.epsilon = 0.6;
  wrong_eps.threads = o.threads;
  const VerificationReport a = equivalence_scan(3, ts, 10, o.seed + 12, wrong_eps);

  EquivalenceOptions wrong_d;
  wrong_d.D = 0.25;
  wrong_d.threads = o.threads;
  const VerificationReport b = equivalence_scan(3, ts, 10, o.seed + 12, wrong_d);

  const int c_bad = exponent_mismatches(0.25);

  r.stat("epsilon_0.6_max_rel_diff", a.statistic("max_rel_diff"))
      .stat("epsilon_0.6_passed", a.passed)
      .stat("D_0.25_max_rel_diff", b.statistic("max_rel_diff"))
      .stat("D_0.25_passed", b.passed)
      .stat("misscaled_exponent_mismatches", c_bad);
  r.detail = "each control must fail its own threshold";
  r.passed = !a.passed && !b.passed && c_bad > 0;
  r.wall_time_s = seconds_since(start);
  return r;
}

namespace {

using Check = VerificationReport (*)(const SuiteOptions&);

struct NamedCheck {
  const char* name;
  Check fn;
  bool analytic;
};

const NamedCheck kChecks[] = {
    {"equivalence", check_equivalence, true},   {"odd_cancellation", check_odd_cancellation, true},
    {"exponent", check_exponent, true},         {"prefactor", check_prefactor, true},
    {"gegenbauer", check_gegenbauer, true},     {"kernel", check_kernel, true},
    {"simulation", check_simulation, false},    {"isotropy", check_isotropy, false},
    {"invariants", check_invariants, false},    {"moran", check_moran, false},
    {"stationary", check_stationary, false},    {"controls", check_controls, true},
};

VerificationReport run_guarded(const NamedCheck& c, int criterion, const SuiteOptions& o) {
  const auto start = Clock::now();
  try {
    return c.fn(o);
  } catch (const std::exception& e) {
    VerificationReport r;
    r.name = c.name;
    r.criterion = criterion;
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
    r.wall_time_s = seconds_since(start);
    return r;
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& c : kChecks) out.emplace_back(c.name);
  out.emplace_back("analytic");
  out.emplace_back("all");
  return out;
}

std::vector<VerificationReport> run_suite(std::string_view name, const SuiteOptions& o) {
  std::vector<VerificationReport> out;
  bool known = false;
  int criterion = 0;
  for (const auto& c : kChecks) {
    ++criterion;
    if (name == "all" || name == c.name || (name == "analytic" && c.analytic)) {
      known = true;
      out.push_back(run_guarded(c, criterion, o));
    }
  }
  if (!known) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  return out;
}

}  // namespace spherewf
