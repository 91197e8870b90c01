#pragma once

#include <cstddef>
#include <span>

#include "spherewf/types.hpp"

namespace spherewf {

// All Wright-Fisher densities below are with respect to Lebesgue measure
// dx_1 ... dx_{k-1} on the simplex.

// Smallest time accepted by the Griffiths expansion.
inline constexpr double kGriffithsMinTime = 0.01;
// Largest number of compositions enumerated for a single xi_m.
inline constexpr std::size_t kDefaultCompositionBudget = 10'000'000;

/// Working precision for the alternating sums in Q_n.
enum class Accumulation {
  Double,     // log-domain terms, compensated summation
  Extended,   // 100 significant digits throughout xi_m and Q_n
  Automatic,  // Double, redone in Extended if cancellation makes a term unreliable
};

/// Dirichlet(epsilon) density Gamma(mu) prod x_i^{eps_i - 1} / Gamma(eps_i),
/// evaluated in log domain. Boundary points give +infinity when the matching
/// eps_i < 1 and 0 when eps_i > 1.
[[nodiscard]] double dirichlet_stationary(const SimplexPoint& x, std::span<const double> epsilon);

/// xi_m = mu_(m) Gamma(eps)^k sum_{|l| = m} m!/(l_1!...l_k!) prod (x_j x'_j)^{l_j} / Gamma(l_j + eps)
/// with mu = k eps; the sum enumerates all C(m+k-1, k-1) compositions.
[[nodiscard]] double xi_m(int m, const SimplexPoint& x, const SimplexPoint& x_prime, double epsilon,
                          std::size_t budget = kDefaultCompositionBudget);

struct QnValue {
  double value = 0.0;
  double max_partial = 0.0;   // largest |term| of the alternating m-sum
  bool cancellation = false;  // |value| < threshold * max_partial
  bool extended = false;      // computed in extended precision
};

/// Q_n(x, x') = (mu+2n-1)/n! sum_{m=0}^n (-1)^{n-m} C(n,m) (mu+m)_(n-1) xi_m for n >= 1,
/// and Q_0 = 1.
[[nodiscard]] QnValue q_n(int n, const SimplexPoint& x, const SimplexPoint& x_prime, double epsilon,
                          Accumulation accumulation = Accumulation::Automatic);

struct GriffithsQuery {
  SimplexPoint x;
  SimplexPoint x_prime;
  double t = 1.0;
  double epsilon = 0.5;
  Truncation trunc{200, 1e-15, 3};
  Accumulation accumulation = Accumulation::Automatic;
  std::size_t composition_budget = kDefaultCompositionBudget;
};

struct DensityValue {
  double value = 0.0;
  double series = 0.0;      // sum_n exp(-lambda_n t) Q_n, without the stationary prefactor
  int terms = 0;
  double last_term = 0.0;   // |exp(-lambda_n t) Q_n| of the last term kept
  bool converged = true;
  bool extended = false;    // extended precision was used
};

/// Griffiths expansion of p(x, t | x', 0) for common mutation parameter eps:
///   Dirichlet(eps) density * sum_n exp(-n(n-1)t/2 - mu n t/2) Q_n(x, x').
/// The series stops once `consecutive_small` successive terms are below tol
/// and n >= 5.
[[nodiscard]] DensityValue griffiths_density(const GriffithsQuery& q);

struct PushforwardQuery {
  SimplexPoint x;
  SimplexPoint x_prime;
  double t = 1.0;
  double D = 0.125;
  Truncation trunc{};
};

struct PushforwardValue {
  double value = 0.0;
  double even_sum = 0.0;  // even-L part of the sign-flip sum, before prefactors
  double odd_sum = 0.0;   // odd-L part; cancels across the sign flips
  int terms = 0;
  double tail_bound = 0.0;
  bool converged = true;
};

/// Density of x = y^2 when y follows the sphere heat kernel from y' = +sqrt(x'):
///   Gamma(k/2)/pi^{k/2} prod x_i^{-1/2} 2^{-k} sum_{s in {+-1}^k} rho(s*sqrt(x), t | sqrt(x'), 0)
/// with rho relative to the normalized sphere measure.
[[nodiscard]] PushforwardValue pushforward_density(const PushforwardQuery& q);

/// Decay rate D L (L + k - 2) of the L-th sphere mode.
[[nodiscard]] double pushforward_rate(int L, int k, double D);
/// Decay rate n(n-1)/2 + mu n/2 of the n-th Griffiths mode.
[[nodiscard]] double griffiths_rate(int n, double mu);

}  // namespace spherewf
