#pragma once

#include <span>

namespace spherewf {

/// Gegenbauer polynomial C_L^p(z) by the three-term recurrence
///   L C_L = 2z(L+p-1) C_{L-1} - (L+2p-2) C_{L-2},  C_0 = 1, C_1 = 2pz.
/// Requires L >= 0 and p > 0.
[[nodiscard]] double gegenbauer(int L, double p, double z);

/// Fills out[L] = C_L^p(z) for L = 0..out.size()-1.
void gegenbauer_sequence(double p, double z, std::span<double> out);

/// C_L^p(z) from the explicit alternating sum
///   sum_j (-1)^j Gamma(L-j+p) / (Gamma(p) j! (L-2j)!) (2z)^{L-2j}.
/// Gamma(L-j+p)/Gamma(p) is taken as the exact rising factorial (p)_{L-j} and the
/// sum is carried in 50-digit arithmetic, which absorbs the cancellation of
/// the alternating terms for L <= 40. Used as an oracle for gegenbauer().
[[nodiscard]] double gegenbauer_explicit(int L, double p, double z);

/// |(1 - 2zh + h^2)^{-p} - sum_{L=0}^{L_max} C_L^p(z) h^L|.
[[nodiscard]] double generating_function_residual(double p, double z, double h, int L_max);

/// Rising factorial a(a+1)...(a+m-1); 1 for m = 0.
[[nodiscard]] double pochhammer(double a, int m);

struct SignedLog {
  double log_abs;
  int sign;  // -1, 0 or +1
};
/// Rising factorial in log form, for arguments whose product overflows.
[[nodiscard]] SignedLog log_pochhammer(double a, int m);

/// log Gamma(x) for x > 0.
[[nodiscard]] double log_gamma(double x);

/// A_{k-1} = 2 pi^{k/2} / Gamma(k/2), the surface area of S^{k-1}.
[[nodiscard]] double sphere_surface_area(int k);

}  // namespace spherewf
