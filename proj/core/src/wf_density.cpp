#include "spherewf/wf_density.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spherewf/errors.hpp"
#include "spherewf/specfun.hpp"
#include "spherewf/sphere_heat.hpp"
#include "spherewf/summation.hpp"

namespace spherewf {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_100;

// |Q_n| below this fraction of the largest alternating term is flagged.
constexpr double kCancellationDouble = 1e-10;
constexpr double kCancellationWide = 1e-84;
// Relative rounding level assumed when estimating a term's absolute error.
constexpr double kRoundingDouble = 1e-15;
constexpr double kRoundingWide = 1e-97;

void require_pair(const SimplexPoint& x, const SimplexPoint& x_prime, const char* who) {
  if (x.dim() != x_prime.dim()) throw DomainError(std::string(who) + ": dimension mismatch");
  if (!x.is_interior() || !x_prime.is_interior()) {
    throw DomainError(std::string(who) + ": points must lie in the open simplex (all x_j > 0)");
  }
}

double binomial_count(int m, int k) {
  // C(m+k-1, k-1) in floating point, enough for a budget check
  double c = 1.0;
  for (int i = 1; i < k; ++i) c = c * (m + i) / i;
  return c;
}

// Visits every composition l_1 + ... + l_k = m, l_j >= 0, with an odometer
// over the first k-1 parts; the last part takes the remainder.
template <class F>
void for_each_composition(int m, int k, F&& visit) {
  std::vector<int> l(static_cast<std::size_t>(k), 0);
  l.back() = m;
  int partial = 0;
  for (;;) {
    visit(l);
    int pos = k - 2;
    while (pos >= 0) {
      if (partial < m) {
        ++l[static_cast<std::size_t>(pos)];
        ++partial;
        l.back() = m - partial;
        break;
      }
      partial -= l[static_cast<std::size_t>(pos)];
      l[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

// xi_m and Q_n in double precision; per-composition terms in log domain.
class DoubleEngine {
 public:
  DoubleEngine(const SimplexPoint& x, const SimplexPoint& x_prime, double eps, std::size_t budget)
      : k_(x.dim()), eps_(eps), mu_(k_ * eps), budget_(budget) {
    log_z_.resize(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) {
      log_z_[static_cast<std::size_t>(j)] =
          std::log(x[static_cast<std::size_t>(j)]) + std::log(x_prime[static_cast<std::size_t>(j)]);
    }
    log_a_.assign(static_cast<std::size_t>(k_), std::vector<double>{0.0});
  }

  static constexpr double cancellation_threshold() { return kCancellationDouble; }
  static constexpr double rounding() { return kRoundingDouble; }

  double log_xi(int m) {
    while (static_cast<int>(log_xi_.size()) <= m) log_xi_.push_back(compute_log_xi(static_cast<int>(log_xi_.size())));
    return log_xi_[static_cast<std::size_t>(m)];
  }

  QnValue q(int n) {
    if (n == 0) return {1.0, 1.0, false, false};
    const double log_pref = std::log(mu_ + 2.0 * n - 1.0) - log_gamma(n + 1.0);
    std::vector<double> logs(static_cast<std::size_t>(n) + 1);
    double max_log = -INFINITY;
    for (int m = 0; m <= n; ++m) {
      const double log_choose = log_gamma(n + 1.0) - log_gamma(m + 1.0) - log_gamma(n - m + 1.0);
      const double lp = log_pref + log_choose + log_pochhammer(mu_ + m, n - 1).log_abs + log_xi(m);
      logs[static_cast<std::size_t>(m)] = lp;
      max_log = std::max(max_log, lp);
    }
    CompensatedSum sum;
    for (int m = 0; m <= n; ++m) {
      const double mag = std::exp(logs[static_cast<std::size_t>(m)] - max_log);
      sum += ((n - m) % 2 == 0) ? mag : -mag;
    }
    const double scaled = sum.value();
    QnValue out;
    out.max_partial = std::exp(max_log);
    out.value = scaled == 0.0 ? 0.0 : std::copysign(std::exp(max_log + std::log(std::abs(scaled))), scaled);
    out.cancellation = std::abs(scaled) < kCancellationDouble;
    return out;
  }

 private:
  void extend_tables(int m) {
    for (int j = 0; j < k_; ++j) {
      auto& t = log_a_[static_cast<std::size_t>(j)];
      while (static_cast<int>(t.size()) <= m) {
        const double l = static_cast<double>(t.size());
        // a_j[l] = z_j^l / (l! (eps)_l)
        t.push_back(t.back() + log_z_[static_cast<std::size_t>(j)] - std::log(l) - std::log(eps_ + l - 1.0));
      }
    }
  }

  double compute_log_xi(int m) {
    if (binomial_count(m, k_) > static_cast<double>(budget_)) {
      throw DomainError("xi_m: composition count for m = " + std::to_string(m) + " exceeds the enumeration budget");
    }
    extend_tables(m);
    const auto log_term = [&](const std::vector<int>& l) {
      double s = 0.0;
      for (int j = 0; j < k_; ++j) {
        s += log_a_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l[static_cast<std::size_t>(j)])];
      }
      return s;
    };
    double max_log = -INFINITY;
    for_each_composition(m, k_, [&](const std::vector<int>& l) { max_log = std::max(max_log, log_term(l)); });
    CompensatedSum sum;
    for_each_composition(m, k_, [&](const std::vector<int>& l) { sum += std::exp(log_term(l) - max_log); });
    // mu_(m) m! prefactor; Gamma(eps)^k / prod Gamma(l_j + eps) = 1 / prod (eps)_{l_j} is in the table.
    return log_pochhammer(mu_, m).log_abs + log_gamma(m + 1.0) + max_log + std::log(sum.value());
  }

  int k_;
  double eps_;
  double mu_;
  std::size_t budget_;
  std::vector<double> log_z_;
  std::vector<std::vector<double>> log_a_;
  std::vector<double> log_xi_;
};

// The same quantities carried in 100-digit binary floating point.
class WideEngine {
 public:
  WideEngine(const SimplexPoint& x, const SimplexPoint& x_prime, double eps, std::size_t budget)
      : k_(x.dim()), eps_(eps), mu_(Wide(k_) * Wide(eps)), budget_(budget) {
    z_.resize(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) {
      z_[static_cast<std::size_t>(j)] = Wide(x[static_cast<std::size_t>(j)]) * Wide(x_prime[static_cast<std::size_t>(j)]);
    }
    a_.assign(static_cast<std::size_t>(k_), std::vector<Wide>{Wide(1)});
  }

  static constexpr double cancellation_threshold() { return kCancellationWide; }
  static constexpr double rounding() { return kRoundingWide; }

  const Wide& xi(int m) {
    while (static_cast<int>(xi_.size()) <= m) xi_.push_back(compute_xi(static_cast<int>(xi_.size())));
    return xi_[static_cast<std::size_t>(m)];
  }

  QnValue q(int n) {
    if (n == 0) return {1.0, 1.0, false, true};
    Wide pref = mu_ + (2 * n - 1);
    for (int i = 2; i <= n; ++i) pref /= i;
    Wide sum = 0;
    Wide max_partial = 0;
    Wide choose = 1;  // C(n, m)
    for (int m = 0; m <= n; ++m) {
      if (m > 0) choose = choose * (n - m + 1) / m;
      Wide rising = 1;  // (mu+m)_(n-1)
      for (int i = 0; i < n - 1; ++i) rising *= mu_ + (m + i);
      const Wide term = pref * choose * rising * xi(m);
      max_partial = std::max(max_partial, Wide(abs(term)));
      if ((n - m) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    QnValue out;
    out.value = sum.convert_to<double>();
    out.max_partial = max_partial.convert_to<double>();
    out.cancellation = abs(sum) < kCancellationWide * max_partial;
    out.extended = true;
    return out;
  }

 private:
  void extend_tables(int m) {
    for (int j = 0; j < k_; ++j) {
      auto& t = a_[static_cast<std::size_t>(j)];
      while (static_cast<int>(t.size()) <= m) {
        const int l = static_cast<int>(t.size());
        t.push_back(t.back() * z_[static_cast<std::size_t>(j)] / (Wide(l) * (Wide(eps_) + (l - 1))));
      }
    }
  }

  Wide compute_xi(int m) {
    if (binomial_count(m, k_) > static_cast<double>(budget_)) {
      throw DomainError("xi_m: composition count for m = " + std::to_string(m) + " exceeds the enumeration budget");
    }
    extend_tables(m);
    Wide sum = 0;
    Wide term;
    for_each_composition(m, k_, [&](const std::vector<int>& l) {
      term = a_[0][static_cast<std::size_t>(l[0])];
      for (int j = 1; j < k_; ++j) term *= a_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l[static_cast<std::size_t>(j)])];
      sum += term;
    });
    Wide pref = 1;  // mu_(m) m!
    for (int i = 0; i < m; ++i) pref *= (mu_ + i) * (i + 1);
    return pref * sum;
  }

  int k_;
  double eps_;
  Wide mu_;
  std::size_t budget_;
  std::vector<Wide> z_;
  std::vector<std::vector<Wide>> a_;
  std::vector<Wide> xi_;
};

struct SeriesOutcome {
  DensityValue value;
  bool unreliable = false;  // some kept term was dominated by rounding error
};

template <class Engine>
SeriesOutcome griffiths_series(Engine& engine, const GriffithsQuery& q) {
  const int k = q.x.dim();
  const double mu = k * q.epsilon;
  SeriesOutcome out;
  CompensatedSum series;
  int small_run = 0;
  int n = 0;
  bool stopped = false;
  for (; n < q.trunc.max_terms; ++n) {
    const QnValue qn = engine.q(n);
    const double decay = std::exp(-griffiths_rate(n, mu) * q.t);
    const double term = decay * qn.value;
    series += term;
    out.value.last_term = std::abs(term);
    if (qn.cancellation && decay * qn.max_partial * Engine::rounding() > q.trunc.tol) {
      out.unreliable = true;
    }
    small_run = std::abs(term) < q.trunc.tol ? small_run + 1 : 0;
    if (small_run >= q.trunc.consecutive_small && n >= 5) {
      stopped = true;
      ++n;
      break;
    }
  }
  out.value.series = series.value();
  out.value.terms = n;
  out.value.converged = stopped && !out.unreliable;
  return out;
}

}  // namespace

double dirichlet_stationary(const SimplexPoint& x, std::span<const double> epsilon) {
  if (epsilon.size() != static_cast<std::size_t>(x.dim())) {
    throw DomainError("dirichlet_stationary: epsilon must have k entries");
  }
  double mu = 0.0;
  for (double e : epsilon) {
    if (!(e > 0.0)) throw DomainError("dirichlet_stationary: epsilon_i must be > 0");
    mu += e;
  }
  double log_density = log_gamma(mu);
  for (std::size_t i = 0; i < epsilon.size(); ++i) {
    log_density -= log_gamma(epsilon[i]);
    const double e1 = epsilon[i] - 1.0;
    if (x[i] == 0.0) {
      if (e1 < 0.0) return INFINITY;
      if (e1 > 0.0) return 0.0;
      continue;
    }
    log_density += e1 * std::log(x[i]);
  }
  return std::exp(log_density);
}

double xi_m(int m, const SimplexPoint& x, const SimplexPoint& x_prime, double epsilon, std::size_t budget) {
  if (m < 0) throw DomainError("xi_m: m must be >= 0");
  if (!(epsilon > 0.0)) throw DomainError("xi_m: epsilon must be > 0");
  require_pair(x, x_prime, "xi_m");
  DoubleEngine engine(x, x_prime, epsilon, budget);
  return std::exp(engine.log_xi(m));
}

QnValue q_n(int n, const SimplexPoint& x, const SimplexPoint& x_prime, double epsilon, Accumulation accumulation) {
  if (n < 0) throw DomainError("q_n: n must be >= 0");
  if (!(epsilon > 0.0)) throw DomainError("q_n: epsilon must be > 0");
  require_pair(x, x_prime, "q_n");
  if (accumulation != Accumulation::Extended) {
    DoubleEngine engine(x, x_prime, epsilon, kDefaultCompositionBudget);
    QnValue v = engine.q(n);
    if (accumulation == Accumulation::Double || !v.cancellation) return v;
  }
  WideEngine engine(x, x_prime, epsilon, kDefaultCompositionBudget);
  return engine.q(n);
}

DensityValue griffiths_density(const GriffithsQuery& q) {
  require_pair(q.x, q.x_prime, "griffiths_density");
  if (!(q.epsilon > 0.0)) throw DomainError("griffiths_density: epsilon must be > 0");
  if (!(q.t >= kGriffithsMinTime) || !std::isfinite(q.t)) {
    throw DomainError("griffiths_density: t = " + std::to_string(q.t) + " is below t_min = 0.01");
  }
  q.trunc.validate();

  const int k = q.x.dim();
  const std::vector<double> eps(static_cast<std::size_t>(k), q.epsilon);
  const double prefactor = dirichlet_stationary(q.x, eps);

  SeriesOutcome outcome;
  if (q.accumulation != Accumulation::Extended) {
    DoubleEngine engine(q.x, q.x_prime, q.epsilon, q.composition_budget);
    outcome = griffiths_series(engine, q);
  }
  if (q.accumulation == Accumulation::Extended ||
      (q.accumulation == Accumulation::Automatic && outcome.unreliable)) {
    WideEngine engine(q.x, q.x_prime, q.epsilon, q.composition_budget);
    outcome = griffiths_series(engine, q);
    outcome.value.extended = true;
  }
  outcome.value.value = prefactor * outcome.value.series;
  return outcome.value;
}

PushforwardValue pushforward_density(const PushforwardQuery& q) {
  require_pair(q.x, q.x_prime, "pushforward_density");
  const int k = q.x.dim();
  if (k > 20) throw DomainError("pushforward_density: k > 20 would need more than 2^20 sign flips");
  if (!(q.t > 0.0) || !(q.D > 0.0)) throw DomainError("pushforward_density: t and D must be positive");
  if (q.D * q.t < kMinDiffusionTime * (1.0 - 1e-12)) {
    throw DomainError("pushforward_density: D*t is below the supported floor (t_min = 1e-3 at D = 1/8)");
  }
  q.trunc.validate();

  const Cutoff cut = truncation_cutoff(q.t, q.D, k, q.trunc.tol, q.trunc.max_terms - 1);
  const auto n_terms = static_cast<std::size_t>(cut.L_max) + 1;
  std::vector<double> weights(n_terms);
  for (std::size_t L = 0; L < n_terms; ++L) {
    const double l = static_cast<double>(L);
    if (L == 0) {
      weights[L] = 1.0;
    } else if (k == 2) {
      weights[L] = 2.0 * std::exp(-pushforward_rate(static_cast<int>(L), 2, q.D) * q.t);
    } else {
      weights[L] = (2.0 * l + k - 2.0) / (k - 2.0) * std::exp(-pushforward_rate(static_cast<int>(L), k, q.D) * q.t);
    }
  }

  std::vector<double> yy(static_cast<std::size_t>(k));
  double log_x_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    yy[ui] = std::sqrt(q.x[ui]) * std::sqrt(q.x_prime[ui]);
    log_x_sum += std::log(q.x[ui]);
  }

  const double p = 0.5 * k - 1.0;
  CompensatedSum even;
  CompensatedSum odd;
  const std::uint32_t n_signs = 1u << k;
  for (std::uint32_t mask = 0; mask < n_signs; ++mask) {
    double z = 0.0;
    for (int i = 0; i < k; ++i) z += ((mask >> i) & 1u) ? -yy[static_cast<std::size_t>(i)] : yy[static_cast<std::size_t>(i)];
    z = std::clamp(z, -1.0, 1.0);
    double prev = 1.0;
    double cur = (k == 2) ? z : 2.0 * p * z;
    even += weights[0];
    for (std::size_t L = 1; L < n_terms; ++L) {
      const double contribution = weights[L] * cur;
      if (L % 2 == 0) {
        even += contribution;
      } else {
        odd += contribution;
      }
      double next = 0.0;
      if (k == 2) {
        next = 2.0 * z * cur - prev;  // Chebyshev: cos(L theta)
      } else {
        const double l = static_cast<double>(L) + 1.0;
        next = (2.0 * z * (l + p - 1.0) * cur - (l + 2.0 * p - 2.0) * prev) / l;
      }
      prev = cur;
      cur = next;
    }
  }

  const double log_prefactor = log_gamma(0.5 * k) - 0.5 * k * std::log(std::numbers::pi) - 0.5 * log_x_sum -
                               k * std::numbers::ln2;
  PushforwardValue out;
  out.even_sum = even.value();
  out.odd_sum = odd.value();
  out.value = std::exp(log_prefactor) * (out.even_sum + out.odd_sum);
  out.terms = static_cast<int>(n_terms);
  out.tail_bound = std::exp(log_prefactor) * n_signs * cut.tail_bound;
  out.converged = cut.achieved;
  return out;
}

double pushforward_rate(int L, int k, double D) { return D * L * static_cast<double>(L + k - 2); }

double griffiths_rate(int n, double mu) { return 0.5 * n * static_cast<double>(n - 1) + 0.5 * mu * n; }

}  // namespace spherewf
