#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spherewf/report.hpp"
#include "spherewf/rng.hpp"
#include "spherewf/types.hpp"

namespace spherewf {

/// Worker count for `threads == 0`: the machine's hardware concurrency.
[[nodiscard]] unsigned resolve_threads(unsigned threads);

/// Calls body(i) for i in [0, n) across up to `threads` workers. Work items
/// must be independent; the first exception thrown is rethrown here.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Uniform point of the simplex conditioned on every coordinate >= min_coord.
[[nodiscard]] SimplexPoint random_interior_point(int k, Rng& rng, double min_coord = 1e-3);

// ---------------------------------------------------------------------------
// Analytic checks

struct EquivalenceOptions {
  double epsilon = 0.5;    // mutation parameter given to the Griffiths side
  double D = 0.125;        // diffusion constant given to the pushforward side
  double threshold = 1e-6;
  unsigned threads = 0;
};

/// max over t_grid x n_points random interior pairs of
/// |griffiths(eps) - pushforward(D)| / max(1, |pushforward|).
[[nodiscard]] VerificationReport equivalence_scan(int k, std::span<const double> t_grid, int n_points,
                                                  std::uint64_t seed, const EquivalenceOptions& options = {});

enum class KernelKind { Sphere, WF };

struct QuadratureCheck {
  double residual = 0.0;     // at order 2q
  double residual_q = 0.0;   // at order q
  double integral = 0.0;     // at order 2q
  double reference = 0.0;
  bool order_flag = false;   // |I_q - I_2q| > 1e-6 max(1, |I_2q|): quadrature too coarse
  bool converged = true;     // every kernel evaluation met its truncation tolerance
};

/// |int p(x, t2 | z) p(z, t1 | x') dz - p(x, t1+t2 | x')| for k = 3.
/// Sphere: x, x' are unit vectors, z parameterized by (cos angle to x',
/// azimuth) with Gauss-Legendre x trapezoid. WF: x, x' are interior simplex
/// points, p is the pushforward density, z integrated with Gauss-Jacobi rules
/// that absorb the z_i^{-1/2} singularities.
[[nodiscard]] QuadratureCheck chapman_kolmogorov(KernelKind kind, int k, double t1, double t2,
                                                 std::span<const double> x_prime, std::span<const double> x,
                                                 int quad_order);

/// |int p(z, t | x') dz - 1|. Sphere: any k >= 2, integrated over the zonal
/// variable with the Gauss-Jacobi weight (1-u^2)^{(k-3)/2}. WF: k = 3
/// pushforward density from x' (barycenter when empty).
[[nodiscard]] QuadratureCheck normalization_check(KernelKind kind, int k, double t, int quad_order,
                                                  std::span<const double> x_prime = {});

// ---------------------------------------------------------------------------
// Monte Carlo checks

struct McOptions {
  int n_paths = 100000;
  double dt = 1e-4;
  double t = 0.5;
  double c = 1.0;
  double alpha = 0.01;
  bool allow_retry = true;  // one rerun on a fresh seed if the first attempt fails
  unsigned threads = 0;
};

/// One-sample KS of y(0).y(t) over sphere paths (k = 3) against the analytic
/// zonal CDF.
[[nodiscard]] VerificationReport mc_sphere_zonal(int k, std::uint64_t seed, const McOptions& options = {});

/// Two-sample KS of x_1(t) between squared sphere paths started at sqrt(x0)
/// and Wright-Fisher isotropic paths started at x0.
[[nodiscard]] VerificationReport mc_wf_pushforward(const SimplexPoint& x0, std::uint64_t seed,
                                                   const McOptions& options = {});

/// The fresh seed used for the single retry of a statistical check.
[[nodiscard]] std::uint64_t retry_seed(std::uint64_t seed);

}  // namespace spherewf
