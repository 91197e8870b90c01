#pragma once

#include <vector>

#include "spherewf/rng.hpp"
#include "spherewf/types.hpp"

namespace spherewf {

// Evaluators refuse D*t below this product (t_min = 1e-3 at D = 1/8); the
// spectral series would need thousands of terms there.
inline constexpr double kMinDiffusionTime = 1e-3 / 8.0;

/// A truncated series value together with its truncation diagnostics.
struct SeriesValue {
  double value = 0.0;
  int terms = 0;            // number of terms summed (L = 0..terms-1)
  double tail_bound = 0.0;  // bound on the neglected tail
  bool converged = true;
};

struct Cutoff {
  int L_max = 0;
  double tail_bound = 0.0;
  bool achieved = true;  // false when max_terms was hit first
};

/// Smallest L_max such that
///   sum_{L > L_max} (2L+k-2)/(k-2) * (k-2)_L / L! * exp(-D L (L+k-2) t) < tol,
/// i.e. the tail of the zonal series bounded with |C_L^p(z)| <= C_L^p(1). For
/// k = 2 the circle bound 2 exp(-D L^2 t) is used. Ratios of successive bound
/// terms are nonincreasing in L, so once a ratio r < 1 appears the remaining
/// tail is majorized by a geometric series.
[[nodiscard]] Cutoff truncation_cutoff(double t, double D, int k, double tol, int max_terms = 100000);

struct SphereKernelQuery {
  SpherePoint y;
  SpherePoint y_prime;
  double t = 1.0;
  double D = 0.125;
  Truncation trunc{};
};

/// Zonal heat kernel on S^{k-1} for fixed (k, t, D): the truncation cutoff and
/// the spectral weights are computed once, then any cos(angle) can be
/// evaluated. Values are densities with respect to the normalized surface
/// measure (total mass 1).
class ZonalHeatKernel {
 public:
  ZonalHeatKernel(int k, double t, double D, const Truncation& trunc);

  [[nodiscard]] SeriesValue operator()(double cos_angle) const;
  [[nodiscard]] int dim() const noexcept { return k_; }
  [[nodiscard]] const Cutoff& cutoff() const noexcept { return cutoff_; }

 private:
  int k_;
  Cutoff cutoff_;
  std::vector<double> weights_;  // (2L+k-2)/(k-2) exp(-D L(L+k-2) t), or 2 exp(-D L^2 t) for k = 2
};

/// rho(y, t | y', 0) with respect to the normalized measure (int dy = 1):
///   sum_L (2L+k-2)/(k-2) C_L^{k/2-1}(y.y') exp(-D L(L+k-2) t).
/// k = 2 is routed to heat_kernel_circle.
[[nodiscard]] SeriesValue heat_kernel(const SphereKernelQuery& q);

/// Same density with respect to the unnormalized surface measure, i.e. divided
/// by A_{k-1}.
[[nodiscard]] SeriesValue heat_kernel_unnormalized(const SphereKernelQuery& q);

/// 1 + 2 sum_{L>=1} cos(L dtheta) exp(-D L^2 t), density w.r.t. dtheta / (2 pi).
[[nodiscard]] SeriesValue heat_kernel_circle(double angle_diff, double t, double D, const Truncation& trunc);

/// P(y(0).y(t) <= u) on S^2, from the kernel integrated against the zonal
/// measure du/2 term by term:
///   (1+u)/2 + 1/2 sum_{L>=1} exp(-D L(L+1) t) (P_{L+1}(u) - P_{L-1}(u)).
[[nodiscard]] SeriesValue zonal_cdf_s2(double u, double t, double D, const Truncation& trunc);

/// Uniform point on S^{k-1}: a normalized vector of k standard normals.
[[nodiscard]] SpherePoint sample_uniform_sphere(int k, Rng& rng);

}  // namespace spherewf
