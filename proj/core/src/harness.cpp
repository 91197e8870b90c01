#include "spherewf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "spherewf/errors.hpp"
#include "spherewf/quadrature.hpp"
#include "spherewf/simulate.hpp"
#include "spherewf/sphere_heat.hpp"
#include "spherewf/stats.hpp"
#include "spherewf/summation.hpp"
#include "spherewf/wf_density.hpp"

namespace spherewf {

unsigned resolve_threads(unsigned threads) {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SimplexPoint random_interior_point(int k, Rng& rng, double min_coord) {
  if (k < 2) throw DomainError("random_interior_point: k must be >= 2");
  if (!(min_coord >= 0.0) || min_coord * k >= 1.0) throw DomainError("random_interior_point: min_coord too large");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(static_cast<std::size_t>(k));
  for (;;) {
    double s = 0.0;
    for (double& e : v) s += (e = expo(rng));
    for (double& e : v) e /= s;
    const double lo = *std::min_element(v.begin(), v.end());
    if (lo >= min_coord && lo > 0.0) break;
  }
  return SimplexPoint(std::move(v));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join_reals(std::span<const double> v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ';';
    s += format_real(x);
  }
  return s;
}

}  // namespace

VerificationReport equivalence_scan(int k, std::span<const double> t_grid, int n_points, std::uint64_t seed,
                                    const EquivalenceOptions& options) {
  const auto start = Clock::now();
  if (k < 3 || k > 6) throw DomainError("equivalence_scan: k must be in [3, 6]");
  if (n_points < 1 || t_grid.empty()) throw DomainError("equivalence_scan: empty scan");
  for (double t : t_grid) {
    if (!(t >= kGriffithsMinTime && t <= 1e3)) throw DomainError("equivalence_scan: t outside [t_min, 1e3]");
  }

  std::vector<std::pair<SimplexPoint, SimplexPoint>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
    SimplexPoint x = random_interior_point(k, rng);
    SimplexPoint xp = random_interior_point(k, rng);
    pairs.emplace_back(std::move(x), std::move(xp));
  }

  struct Item {
    double diff = 0.0;
    bool converged = true;
    bool extended = false;
    int terms = 0;
    std::string error;
  };
  const std::size_t n_items = pairs.size() * t_grid.size();
  std::vector<Item> items(n_items);
  parallel_for(n_items, options.threads, [&](std::size_t idx) {
    const auto& [x, xp] = pairs[idx / t_grid.size()];
    const double t = t_grid[idx % t_grid.size()];
    Item& it = items[idx];
    try {
      GriffithsQuery g{x, xp, t, options.epsilon};
      const DensityValue gv = griffiths_density(g);
      PushforwardQuery p{x, xp, t, options.D};
      const PushforwardValue pv = pushforward_density(p);
      it.diff = std::abs(gv.value - pv.value) / std::max(1.0, std::abs(pv.value));
      it.converged = gv.converged && pv.converged;
      it.extended = gv.extended;
      it.terms = gv.terms;
    } catch (const std::exception& e) {
      it.error = e.what();
      it.converged = false;
    }
  });

  double max_diff = 0.0;
  double worst_t = t_grid[0];
  int nonconverged = 0;
  int extended = 0;
  int max_terms = 0;
  std::string detail;
  for (std::size_t idx = 0; idx < n_items; ++idx) {
    const Item& it = items[idx];
    if (!it.converged) {
      ++nonconverged;
      if (detail.empty() && !it.error.empty()) detail = it.error;
    }
    if (it.extended) ++extended;
    max_terms = std::max(max_terms, it.terms);
    if (it.diff > max_diff || std::isnan(it.diff)) {
      max_diff = it.diff;
      worst_t = t_grid[idx % t_grid.size()];
    }
  }

  VerificationReport r;
  r.name = "equivalence";
  r.param("k", std::to_string(k))
      .param("t_grid", join_reals(t_grid))
      .param("n_points", std::to_string(n_points))
      .param("seed", std::to_string(seed))
      .param("epsilon", options.epsilon)
      .param("D", options.D);
  r.stat("max_rel_diff", max_diff)
      .stat("worst_t", worst_t)
      .stat("evaluations", static_cast<double>(n_items))
      .stat("nonconverged", nonconverged)
      .stat("extended_precision", extended)
      .stat("max_griffiths_terms", max_terms);
  r.threshold = options.threshold;
  r.passed = nonconverged == 0 && max_diff < options.threshold;
  if (nonconverged > 0 && detail.empty()) detail = "evaluator reported non-convergence";
  r.detail = detail;
  r.wall_time_s = seconds_since(start);
  return r;
}

namespace {

constexpr double kOrderFlagTol = 1e-6;

void finish(QuadratureCheck& out, double i_q, double i_2q, double reference) {
  out.integral = i_2q;
  out.reference = reference;
  out.residual = std::abs(i_2q - reference);
  out.residual_q = std::abs(i_q - reference);
  out.order_flag = std::abs(i_q - i_2q) > kOrderFlagTol * std::max(1.0, std::abs(i_2q));
}

// Orthonormal e1, e2 spanning the plane perpendicular to unit vector a in R^3.
void orthonormal_complement(std::span<const double> a, double e1[3], double e2[3]) {
  // Start from the coordinate axis least aligned with a.
  int m = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(a[static_cast<std::size_t>(i)]) < std::abs(a[static_cast<std::size_t>(m)])) m = i;
  }
  double v[3] = {0.0, 0.0, 0.0};
  v[m] = 1.0;
  const double d = v[0] * a[0] + v[1] * a[1] + v[2] * a[2];
  double n = 0.0;
  for (int i = 0; i < 3; ++i) {
    e1[i] = v[i] - d * a[static_cast<std::size_t>(i)];
    n += e1[i] * e1[i];
  }
  n = std::sqrt(n);
  for (int i = 0; i < 3; ++i) e1[i] /= n;
  e2[0] = a[1] * e1[2] - a[2] * e1[1];
  e2[1] = a[2] * e1[0] - a[0] * e1[2];
  e2[2] = a[0] * e1[1] - a[1] * e1[0];
}

double sphere_ck_integral(const ZonalHeatKernel& k1, const ZonalHeatKernel& k2, std::span<const double> xp,
                          std::span<const double> x, int q, bool& converged) {
  double e1[3];
  double e2[3];
  orthonormal_complement(xp, e1, e2);
  const QuadratureRule gl = gauss_legendre(q);
  const int n_phi = 2 * q;
  const double w_phi = 2.0 * std::numbers::pi / n_phi;
  const double xe1 = x[0] * e1[0] + x[1] * e1[1] + x[2] * e1[2];
  const double xe2 = x[0] * e2[0] + x[1] * e2[1] + x[2] * e2[2];
  const double xxp = x[0] * xp[0] + x[1] * xp[1] + x[2] * xp[2];
  CompensatedSum sum;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double u = gl.nodes[i];
    const SeriesValue a = k1(u);
    converged = converged && a.converged;
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    CompensatedSum inner;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = w_phi * j;
      // z = u x' + s (cos phi e1 + sin phi e2)
      const double xz = std::clamp(u * xxp + s * (std::cos(phi) * xe1 + std::sin(phi) * xe2), -1.0, 1.0);
      const SeriesValue b = k2(xz);
      converged = converged && b.converged;
      inner.add(b.value);
    }
    sum.add(gl.weights[i] * a.value * inner.value() * w_phi);
  }
  return sum.value() / (4.0 * std::numbers::pi);
}

// Calls f(z, weight) over a tensor rule for int_simplex F(z) prod z_i^{-1/2} dz
// on the 2-simplex: z = (u, (1-u)v, (1-u)(1-v)).
template <class F>
void simplex_rule(int q, F&& f) {
  const QuadratureRule ru = gauss_jacobi_unit(q, -0.5, 0.0);
  const QuadratureRule rv = gauss_jacobi_unit(q, -0.5, -0.5);
  for (std::size_t i = 0; i < ru.nodes.size(); ++i) {
    const double u = ru.nodes[i];
    for (std::size_t j = 0; j < rv.nodes.size(); ++j) {
      const double v = rv.nodes[j];
      const double z[3] = {u, (1.0 - u) * v, (1.0 - u) * (1.0 - v)};
      f(std::span<const double>(z, 3), ru.weights[i] * rv.weights[j]);
    }
  }
}

SimplexPoint simplex_node(std::span<const double> z) {
  // Nodes are interior by construction; skip the renormalization tolerance check.
  return SimplexPoint(std::vector<double>(z.begin(), z.end()));
}

double wf_ck_integral(const SimplexPoint& xp, const SimplexPoint& x, double t1, double t2, int q, bool& converged) {
  CompensatedSum sum;
  simplex_rule(q, [&](std::span<const double> z, double w) {
    const SimplexPoint zp = simplex_node(z);
    const PushforwardValue a = pushforward_density({zp, xp, t1});
    const PushforwardValue b = pushforward_density({x, zp, t2});
    converged = converged && a.converged && b.converged;
    sum.add(w * a.value * std::sqrt(z[0] * z[1] * z[2]) * b.value);
  });
  return sum.value();
}

double wf_norm_integral(const SimplexPoint& xp, double t, int q, bool& converged) {
  CompensatedSum sum;
  simplex_rule(q, [&](std::span<const double> z, double w) {
    const PushforwardValue a = pushforward_density({simplex_node(z), xp, t});
    converged = converged && a.converged;
    sum.add(w * a.value * std::sqrt(z[0] * z[1] * z[2]));
  });
  return sum.value();
}

void check_order(int quad_order) {
  if (quad_order < 2) throw DomainError("quadrature order must be >= 2");
}

}  // namespace

QuadratureCheck chapman_kolmogorov(KernelKind kind, int k, double t1, double t2, std::span<const double> x_prime,
                                   std::span<const double> x, int quad_order) {
  check_order(quad_order);
  if (k != 3) throw DomainError("chapman_kolmogorov: quadrature implemented for k = 3 only");
  if (x.size() != 3 || x_prime.size() != 3) throw DomainError("chapman_kolmogorov: points must have 3 coordinates");
  QuadratureCheck out;
  if (kind == KernelKind::Sphere) {
    const SpherePoint y(std::vector<double>(x.begin(), x.end()));
    const SpherePoint yp(std::vector<double>(x_prime.begin(), x_prime.end()));
    const double D = 0.125;
    const Truncation trunc{};
    const ZonalHeatKernel k1(3, t1, D, trunc);
    const ZonalHeatKernel k2(3, t2, D, trunc);
    const ZonalHeatKernel k12(3, t1 + t2, D, trunc);
    const double i_q = sphere_ck_integral(k1, k2, yp.coords(), y.coords(), quad_order, out.converged);
    const double i_2q = sphere_ck_integral(k1, k2, yp.coords(), y.coords(), 2 * quad_order, out.converged);
    const SeriesValue ref = k12(y.dot(yp));
    out.converged = out.converged && ref.converged;
    finish(out, i_q, i_2q, ref.value);
  } else {
    const SimplexPoint xs(std::vector<double>(x.begin(), x.end()));
    const SimplexPoint xps(std::vector<double>(x_prime.begin(), x_prime.end()));
    if (!xs.is_interior() || !xps.is_interior()) throw DomainError("chapman_kolmogorov: WF points must be interior");
    const double i_q = wf_ck_integral(xps, xs, t1, t2, quad_order, out.converged);
    const double i_2q = wf_ck_integral(xps, xs, t1, t2, 2 * quad_order, out.converged);
    const PushforwardValue ref = pushforward_density({xs, xps, t1 + t2});
    out.converged = out.converged && ref.converged;
    finish(out, i_q, i_2q, ref.value);
  }
  return out;
}

QuadratureCheck normalization_check(KernelKind kind, int k, double t, int quad_order, std::span<const double> x_prime) {
  check_order(quad_order);
  QuadratureCheck out;
  if (kind == KernelKind::Sphere) {
    if (k < 2) throw DomainError("normalization_check: k must be >= 2");
    // u = y.y' has density proportional to (1-u^2)^{(k-3)/2} under the uniform measure.
    const double a = 0.5 * (k - 3);
    const Truncation trunc{};
    const ZonalHeatKernel kernel(k, t, 0.125, trunc);
    auto integral = [&](int q) {
      const QuadratureRule rule = gauss_jacobi(q, a, a);
      CompensatedSum s;
      CompensatedSum w;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const SeriesValue v = kernel(rule.nodes[i]);
        out.converged = out.converged && v.converged;
        s.add(rule.weights[i] * v.value);
        w.add(rule.weights[i]);
      }
      return s.value() / w.value();
    };
    const double i_q = integral(quad_order);
    const double i_2q = integral(2 * quad_order);
    finish(out, i_q, i_2q, 1.0);
  } else {
    if (k != 3) throw DomainError("normalization_check: WF quadrature implemented for k = 3 only");
    const SimplexPoint xp = x_prime.empty() ? SimplexPoint::barycenter(3)
                                            : SimplexPoint(std::vector<double>(x_prime.begin(), x_prime.end()));
    if (!xp.is_interior()) throw DomainError("normalization_check: x' must be interior");
    const double i_q = wf_norm_integral(xp, t, quad_order, out.converged);
    const double i_2q = wf_norm_integral(xp, t, 2 * quad_order, out.converged);
    finish(out, i_q, i_2q, 1.0);
  }
  return out;
}

std::uint64_t retry_seed(std::uint64_t seed) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void check_mc(const McOptions& o) {
  if (o.n_paths < 1000) throw DomainError("Monte Carlo checks need n_paths >= 1000");
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");
}

struct Attempt {
  KsResult ks;
  double max_defect = 0.0;
  double mean_defect = 0.0;
  std::int64_t clamps = 0;
};

template <class Run>
void run_with_retry(VerificationReport& r, std::uint64_t seed, const McOptions& o, Run&& run) {
  Attempt first = run(seed);
  Attempt final = first;
  int attempts = 1;
  if (first.ks.p_value < o.alpha && o.allow_retry) {
    final = run(retry_seed(seed));
    attempts = 2;
  }
  r.stat("ks_statistic", final.ks.statistic)
      .stat("p_value", final.ks.p_value)
      .stat("n_effective", final.ks.n_effective)
      .stat("attempts", attempts)
      .stat("first_p_value", first.ks.p_value)
      .stat("max_defect", final.max_defect)
      .stat("mean_defect", final.mean_defect)
      .stat("clamp_count", static_cast<double>(final.clamps));
  r.threshold = o.alpha;
  r.passed = final.ks.p_value >= o.alpha;
}

}  // namespace

VerificationReport mc_sphere_zonal(int k, std::uint64_t seed, const McOptions& o) {
  const auto start = Clock::now();
  check_mc(o);
  if (k != 3) throw DomainError("mc_sphere_zonal: analytic zonal CDF implemented for k = 3 only");
  const ModelParams params(k, o.c, 0.5);
  const double D = params.diffusion_constant();
  const Truncation trunc{};

  auto run = [&](std::uint64_t s) {
    const auto n = static_cast<std::size_t>(o.n_paths);
    std::vector<double> u(n);
    std::vector<PathDiagnostics> diag(n);
    parallel_for(n, o.threads, [&](std::size_t i) {
      Rng rng = make_stream(s, i);
      const SpherePoint y0 = sample_uniform_sphere(k, rng);
      const std::vector<double> y = simulate_terminal(Model::Sphere, y0.coords(), o.t, o.dt, params, rng, &diag[i]);
      double d = 0.0;
      for (int j = 0; j < k; ++j) d += y[static_cast<std::size_t>(j)] * y0[static_cast<std::size_t>(j)];
      u[i] = d;
    });
    Attempt a;
    double defect_sum = 0.0;
    for (const auto& d : diag) {
      a.max_defect = std::max(a.max_defect, d.max_defect);
      defect_sum += d.mean_defect;
    }
    a.mean_defect = defect_sum / static_cast<double>(n);
    a.ks = ks_one_sample(u, [&](double v) { return zonal_cdf_s2(std::clamp(v, -1.0, 1.0), o.t, D, trunc).value; });
    return a;
  };

  VerificationReport r;
  r.name = "mc_sphere_zonal";
  r.param("k", std::to_string(k))
      .param("t", o.t)
      .param("dt", o.dt)
      .param("c", o.c)
      .param("n_paths", std::to_string(o.n_paths))
      .param("seed", std::to_string(seed));
  run_with_retry(r, seed, o, run);
  r.wall_time_s = seconds_since(start);
  return r;
}

VerificationReport mc_wf_pushforward(const SimplexPoint& x0, std::uint64_t seed, const McOptions& o) {
  const auto start = Clock::now();
  check_mc(o);
  const int k = x0.dim();
  const ModelParams params(k, o.c, 0.5);
  const SpherePoint y0 = sqrt_lift(x0);

  auto run = [&](std::uint64_t s) {
    const auto n = static_cast<std::size_t>(o.n_paths);
    std::vector<double> from_sphere(n);
    std::vector<double> from_wf(n);
    std::vector<PathDiagnostics> diag(n);
    parallel_for(2 * n, o.threads, [&](std::size_t i) {
      Rng rng = make_stream(s, i);
      if (i < n) {
        const std::vector<double> y = simulate_terminal(Model::Sphere, y0.coords(), o.t, o.dt, params, rng);
        from_sphere[i] = y[0] * y[0];
      } else {
        const std::vector<double> x =
            simulate_terminal(Model::WFIsotropic, x0.coords(), o.t, o.dt, params, rng, &diag[i - n]);
        from_wf[i - n] = x[0];
      }
    });
    Attempt a;
    double defect_sum = 0.0;
    for (const auto& d : diag) {
      a.max_defect = std::max(a.max_defect, d.max_defect);
      defect_sum += d.mean_defect;
      a.clamps += d.clamp_count;
    }
    a.mean_defect = defect_sum / static_cast<double>(n);
    a.ks = ks_two_sample(from_sphere, from_wf);
    return a;
  };

  VerificationReport r;
  r.name = "mc_wf_pushforward";
  std::string xs;
  for (double v : x0.coords()) xs += (xs.empty() ? "" : ";") + format_real(v);
  r.param("x0", xs)
      .param("t", o.t)
      .param("dt", o.dt)
      .param("c", o.c)
      .param("n_paths", std::to_string(o.n_paths))
      .param("seed", std::to_string(seed));
  run_with_retry(r, seed, o, run);
  r.wall_time_s = seconds_since(start);
  return r;
}

}  // namespace spherewf
