#include "spherewf/sphere_heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "spherewf/errors.hpp"
#include "spherewf/specfun.hpp"
#include "spherewf/summation.hpp"

namespace spherewf {

namespace {

// log of the L-th bound term (2L+k-2)/(k-2) C_L^{k/2-1}(1) exp(-D L(L+k-2) t).
double log_bound_term(int L, int k, double Dt) {
  if (L == 0) return 0.0;
  if (k == 2) return std::log(2.0) - Dt * L * static_cast<double>(L);
  const double a = k - 2.0;
  return std::log((2.0 * L + a) / a) + log_gamma(L + a) - log_gamma(a) - log_gamma(L + 1.0) -
         Dt * L * (L + a);
}

void check_time(double t, double D) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat kernel: t must be positive");
  if (!(D > 0.0) || !std::isfinite(D)) throw DomainError("heat kernel: D must be positive");
  if (D * t < kMinDiffusionTime * (1.0 - 1e-12)) {
    throw DomainError("heat kernel: D*t = " + std::to_string(D * t) +
                      " is below the supported floor (t_min = 1e-3 at D = 1/8)");
  }
}

}  // namespace

Cutoff truncation_cutoff(double t, double D, int k, double tol, int max_terms) {
  if (!(t > 0.0) || !(D > 0.0)) throw DomainError("truncation_cutoff: t and D must be positive");
  if (!(tol > 0.0)) throw DomainError("truncation_cutoff: tol must be positive");
  if (k < 2) throw DomainError("truncation_cutoff: k must be >= 2");
  if (max_terms < 0) throw DomainError("truncation_cutoff: max_terms must be >= 0");
  const double Dt = D * t;

  // term[L] for L = 0..; extended on demand.
  std::vector<double> term{1.0};
  const auto T = [&](int L) {
    while (static_cast<int>(term.size()) <= L) {
      term.push_back(std::exp(log_bound_term(static_cast<int>(term.size()), k, Dt)));
    }
    return term[static_cast<std::size_t>(L)];
  };
  const auto ratio = [&](int L) { return std::exp(log_bound_term(L + 1, k, Dt) - log_bound_term(L, k, Dt)); };

  // First L >= 1 with a ratio below one; from there on the tail is geometric.
  const int scan_limit = max_terms + 2;
  int first_contracting = -1;
  for (int L = 1; L <= scan_limit; ++L) {
    if (ratio(L) < 1.0) {
      first_contracting = L;
      break;
    }
  }

  const auto bound = [&](int M) -> double {
    if (first_contracting < 0) return INFINITY;
    if (M + 1 >= first_contracting) {
      return T(M + 1) / (1.0 - ratio(M + 1));
    }
    CompensatedSum s;
    for (int L = M + 1; L < first_contracting; ++L) s += T(L);
    s += T(first_contracting) / (1.0 - ratio(first_contracting));
    return s.value();
  };

  for (int M = 0; M <= max_terms; ++M) {
    const double b = bound(M);
    if (b < tol) return {M, b, true};
  }
  return {max_terms, bound(max_terms), false};
}

ZonalHeatKernel::ZonalHeatKernel(int k, double t, double D, const Truncation& trunc) : k_(k) {
  if (k < 2) throw DomainError("heat kernel: k must be >= 2");
  check_time(t, D);
  trunc.validate();
  cutoff_ = truncation_cutoff(t, D, k, trunc.tol, trunc.max_terms - 1);
  weights_.resize(static_cast<std::size_t>(cutoff_.L_max) + 1);
  const double Dt = D * t;
  for (int L = 0; L <= cutoff_.L_max; ++L) {
    double w = 0.0;
    if (L == 0) {
      w = 1.0;
    } else if (k == 2) {
      w = 2.0 * std::exp(-Dt * L * static_cast<double>(L));
    } else {
      const double a = k - 2.0;
      w = (2.0 * L + a) / a * std::exp(-Dt * L * (L + a));
    }
    weights_[static_cast<std::size_t>(L)] = w;
  }
}

SeriesValue ZonalHeatKernel::operator()(double cos_angle) const {
  const double z = std::clamp(cos_angle, -1.0, 1.0);
  CompensatedSum sum;
  double prev = 1.0;
  double cur = 0.0;
  if (k_ == 2) {
    // cos(L theta) = T_L(cos theta), Chebyshev recurrence.
    cur = z;
    sum += weights_[0];
    for (std::size_t L = 1; L < weights_.size(); ++L) {
      sum += weights_[L] * cur;
      const double next = 2.0 * z * cur - prev;
      prev = cur;
      cur = next;
    }
  } else {
    const double p = 0.5 * k_ - 1.0;
    cur = 2.0 * p * z;
    sum += weights_[0];
    for (std::size_t L = 1; L < weights_.size(); ++L) {
      sum += weights_[L] * cur;
      const double l = static_cast<double>(L) + 1.0;
      const double next = (2.0 * z * (l + p - 1.0) * cur - (l + 2.0 * p - 2.0) * prev) / l;
      prev = cur;
      cur = next;
    }
  }
  return {sum.value(), static_cast<int>(weights_.size()), cutoff_.tail_bound, cutoff_.achieved};
}

SeriesValue heat_kernel(const SphereKernelQuery& q) {
  if (q.y.dim() != q.y_prime.dim()) throw DomainError("heat_kernel: dimension mismatch");
  const ZonalHeatKernel kernel(q.y.dim(), q.t, q.D, q.trunc);
  return kernel(q.y.dot(q.y_prime));
}

SeriesValue heat_kernel_unnormalized(const SphereKernelQuery& q) {
  SeriesValue v = heat_kernel(q);
  const double area = sphere_surface_area(q.y.dim());
  v.value /= area;
  v.tail_bound /= area;
  return v;
}

SeriesValue heat_kernel_circle(double angle_diff, double t, double D, const Truncation& trunc) {
  check_time(t, D);
  trunc.validate();
  if (!std::isfinite(angle_diff)) throw DomainError("heat_kernel_circle: angle must be finite");
  const Cutoff cut = truncation_cutoff(t, D, 2, trunc.tol, trunc.max_terms - 1);
  CompensatedSum sum;
  sum += 1.0;
  for (int L = 1; L <= cut.L_max; ++L) {
    sum += 2.0 * std::cos(L * angle_diff) * std::exp(-D * t * L * static_cast<double>(L));
  }
  return {sum.value(), cut.L_max + 1, cut.tail_bound, cut.achieved};
}

SeriesValue zonal_cdf_s2(double u, double t, double D, const Truncation& trunc) {
  check_time(t, D);
  trunc.validate();
  const double z = std::clamp(u, -1.0, 1.0);
  const Cutoff cut = truncation_cutoff(t, D, 3, trunc.tol, trunc.max_terms - 1);
  // Legendre P_0..P_{L_max+1} at z.
  std::vector<double> P(static_cast<std::size_t>(cut.L_max) + 2);
  gegenbauer_sequence(0.5, z, P);
  CompensatedSum sum;
  sum += 0.5 * (1.0 + z);
  for (int L = 1; L <= cut.L_max; ++L) {
    const auto l = static_cast<std::size_t>(L);
    sum += 0.5 * std::exp(-D * t * L * (L + 1.0)) * (P[l + 1] - P[l - 1]);
  }
  return {std::clamp(sum.value(), 0.0, 1.0), cut.L_max + 1, cut.tail_bound, cut.achieved};
}

SpherePoint sample_uniform_sphere(int k, Rng& rng) {
  if (k < 2) throw DomainError("sample_uniform_sphere: k must be >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(k));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& a : v) {
      a = normal(rng);
      norm2 += a * a;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& a : v) a *= inv;
  return SpherePoint(std::move(v));
}

}  // namespace spherewf
