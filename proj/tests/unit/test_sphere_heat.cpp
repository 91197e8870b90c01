#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "spherewf/errors.hpp"
#include "spherewf/quadrature.hpp"
#include "spherewf/rng.hpp"
#include "spherewf/specfun.hpp"
#include "spherewf/sphere_heat.hpp"

using namespace spherewf;

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre P_L by Bonnet's recursion, written independently of specfun.
double legendre(int L, double u) {
  double p0 = 1.0;
  if (L == 0) return p0;
  double p1 = u;
  for (int n = 2; n <= L; ++n) {
    const double p2 = ((2.0 * n - 1.0) * u * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

SpherePoint on_circle_s2(double angle) { return SpherePoint({std::sin(angle), 0.0, std::cos(angle)}); }

}  // namespace

TEST(HeatKernel, LongTimeLimitIsOne) {
  Rng rng = make_stream(3, 0);
  for (int k : {3, 4, 6}) {
    for (int i = 0; i < 5; ++i) {
      const SeriesValue v = heat_kernel({sample_uniform_sphere(k, rng), sample_uniform_sphere(k, rng), 1e3});
      EXPECT_NEAR(v.value, 1.0, 1e-12);
      EXPECT_TRUE(v.converged);
    }
  }
}

TEST(HeatKernel, ExchangeSymmetryIsExact) {
  Rng rng = make_stream(4, 0);
  for (int i = 0; i < 50; ++i) {
    const SpherePoint a = sample_uniform_sphere(4, rng);
    const SpherePoint b = sample_uniform_sphere(4, rng);
    EXPECT_EQ(heat_kernel({a, b, 0.3}).value, heat_kernel({b, a, 0.3}).value);
  }
}

TEST(HeatKernel, MatchesLegendreSeriesForK3) {
  Rng rng = make_stream(5, 0);
  std::uniform_real_distribution<double> ut(0.05, 3.0);
  const double D = 0.125;
  for (int i = 0; i < 100; ++i) {
    const double angle = kPi * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double t = ut(rng);
    double oracle = 0.0;
    for (int L = 0; L <= 500; ++L) oracle += (2 * L + 1) * legendre(L, std::cos(angle)) * std::exp(-D * L * (L + 1.0) * t);
    const SeriesValue v = heat_kernel({SpherePoint::pole(3), on_circle_s2(angle), t, D});
    EXPECT_NEAR(v.value, oracle, 1e-12 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(HeatKernel, UnnormalizedDividesBySurfaceArea) {
  const SphereKernelQuery q{SpherePoint::pole(3), on_circle_s2(0.7), 0.4};
  EXPECT_NEAR(heat_kernel_unnormalized(q).value, heat_kernel(q).value / (4 * kPi), 1e-15);
}

TEST(HeatKernel, NormalizationK3) {
  const QuadratureRule gl = gauss_legendre(256);
  for (double t : {0.05, 0.5, 5.0}) {
    const ZonalHeatKernel kernel(3, t, 0.125, Truncation{});
    // int_0^pi rho(cos theta) sin(theta)/2 dtheta = int_{-1}^{1} rho(u) du / 2
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * kernel(gl.nodes[i]).value / 2.0;
    EXPECT_NEAR(s, 1.0, 1e-8) << t;
  }
}

TEST(HeatKernel, PositiveUpToTruncation) {
  Rng rng = make_stream(6, 0);
  std::uniform_real_distribution<double> ut(0.05, 2.0);
  double lowest = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const int k = 3 + i % 3;
    const SeriesValue v = heat_kernel({sample_uniform_sphere(k, rng), sample_uniform_sphere(k, rng), ut(rng)});
    lowest = std::min(lowest, v.value);
  }
  EXPECT_GE(lowest, -1e-10);
}

TEST(HeatKernel, RejectsTimesBelowFloor) {
  EXPECT_THROW((void)heat_kernel({SpherePoint::pole(3), SpherePoint::pole(3), 1e-4}), DomainError);
  EXPECT_THROW((void)heat_kernel({SpherePoint::pole(3), SpherePoint::pole(3), -1.0}), DomainError);
}

TEST(HeatKernel, ReportsNonConvergenceAtTermCap) {
  const SeriesValue v = heat_kernel({SpherePoint::pole(3), SpherePoint::pole(3), 0.01, 0.125, Truncation{5, 1e-15, 3}});
  EXPECT_FALSE(v.converged);
}

TEST(HeatKernel, KTwoRoutesToCircle) {
  const SpherePoint a({0.0, 1.0});
  const SpherePoint b({std::sin(0.8), std::cos(0.8)});
  EXPECT_NEAR(heat_kernel({a, b, 0.7}).value, heat_kernel_circle(0.8, 0.7, 0.125, Truncation{}).value, 1e-14);
}

TEST(HeatKernelCircle, Examples) {
  EXPECT_NEAR(heat_kernel_circle(1.3, 1e3, 0.125, Truncation{}).value, 1.0, 1e-12);

  const int n = 512;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += heat_kernel_circle(2 * kPi * i / n, 0.5, 0.125, Truncation{}).value / n;
  EXPECT_NEAR(s, 1.0, 1e-10);

  double direct = 1.0;
  for (int L = 1; L < 200; ++L) direct += 2.0 * std::exp(-L * L / 8.0);
  EXPECT_NEAR(heat_kernel_circle(0.0, 1.0, 0.125, Truncation{}).value, direct, 1e-13);
}

TEST(TruncationCutoff, Examples) {
  int prev = truncation_cutoff(0.05, 0.125, 3, 1e-12).L_max;
  for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const int L = truncation_cutoff(t, 0.125, 3, 1e-12).L_max;
    EXPECT_LE(L, prev);
    prev = L;
  }
  EXPECT_LE(truncation_cutoff(1.0, 0.125, 3, 1e-12).L_max, 25);
  // The first-term bound drops below 1 from L = 1 on when D = 1.
  for (double t : {1.0, 2.0, 10.0}) EXPECT_LE(truncation_cutoff(t, 1.0, 3, 1.0).L_max, 1);
}

TEST(TruncationCutoff, TailBoundHolds) {
  for (int k : {2, 3, 5}) {
    const double D = 0.125;
    const double t = 0.3;
    const Cutoff c = truncation_cutoff(t, D, k, 1e-10);
    ASSERT_TRUE(c.achieved);
    double tail = 0.0;
    for (int L = c.L_max + 1; L < c.L_max + 400; ++L) {
      const double decay = std::exp(-D * L * (L + k - 2.0) * t);
      const double b = k == 2 ? 2.0 * decay : (2.0 * L + k - 2.0) / (k - 2.0) *
                       std::exp(std::lgamma(L + k - 2.0) - std::lgamma(k - 2.0) - std::lgamma(L + 1.0)) * decay;
      tail += b;
    }
    EXPECT_LT(tail, 1e-10) << k;
    EXPECT_LE(tail, c.tail_bound * (1 + 1e-12)) << k;
  }
}

TEST(ZonalCdf, BoundaryValuesAndDerivative) {
  const double t = 0.5;
  const double D = 0.125;
  EXPECT_NEAR(zonal_cdf_s2(-1.0, t, D, Truncation{}).value, 0.0, 1e-14);
  EXPECT_NEAR(zonal_cdf_s2(1.0, t, D, Truncation{}).value, 1.0, 1e-14);
  const ZonalHeatKernel kernel(3, t, D, Truncation{});
  for (double u = -0.9; u < 0.95; u += 0.1) {
    const double h = 1e-5;
    const double deriv = (zonal_cdf_s2(u + h, t, D, Truncation{}).value - zonal_cdf_s2(u - h, t, D, Truncation{}).value) / (2 * h);
    EXPECT_NEAR(deriv, kernel(u).value / 2.0, 1e-6);
  }
}

TEST(SampleUniformSphere, Moments) {
  Rng rng = make_stream(12, 0);
  const int n = 100000;
  for (int k : {3, 5}) {
    std::vector<double> m1(static_cast<std::size_t>(k), 0.0);
    std::vector<double> m2(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < n; ++i) {
      const SpherePoint y = sample_uniform_sphere(k, rng);
      double n2 = 0.0;
      for (int j = 0; j < k; ++j) {
        const double v = y[static_cast<std::size_t>(j)];
        m1[static_cast<std::size_t>(j)] += v / n;
        m2[static_cast<std::size_t>(j)] += v * v / n;
        n2 += v * v;
      }
      ASSERT_NEAR(n2, 1.0, 1e-14);
    }
    for (int j = 0; j < k; ++j) {
      EXPECT_NEAR(m1[static_cast<std::size_t>(j)], 0.0, 4.0 / std::sqrt(n));
      EXPECT_NEAR(m2[static_cast<std::size_t>(j)], 1.0 / k, 4.0 / std::sqrt(n));
    }
  }
}
