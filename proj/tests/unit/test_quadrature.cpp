#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "spherewf/errors.hpp"
#include "spherewf/quadrature.hpp"

using namespace spherewf;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const QuadratureRule r = gauss_legendre(8);
  ASSERT_EQ(r.nodes.size(), 8u);
  for (int deg = 0; deg <= 15; ++deg) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(s, exact, 1e-14) << deg;
  }
}

TEST(GaussJacobi, ChebyshevWeight) {
  // alpha = beta = -1/2: int f / sqrt(1-x^2), int 1 = pi, int x^2 = pi/2
  const QuadratureRule r = gauss_jacobi(6, -0.5, -0.5);
  double s0 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s0 += r.weights[i];
    s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  EXPECT_NEAR(s0, std::numbers::pi, 1e-14);
  EXPECT_NEAR(s2, std::numbers::pi / 2, 1e-14);
}

TEST(GaussJacobi, AsymmetricWeightMoments) {
  // int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
  for (auto [a, b] : {std::pair{-0.5, 0.0}, std::pair{0.0, -0.5}, std::pair{1.5, 0.25}}) {
    const QuadratureRule r = gauss_jacobi(10, a, b);
    double s = 0.0;
    for (double w : r.weights) s += w;
    const double exact = std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
    EXPECT_NEAR(s, exact, 1e-13);
    for (double x : r.nodes) {
      EXPECT_GT(x, -1.0);
      EXPECT_LT(x, 1.0);
    }
  }
}

TEST(GaussJacobiUnit, BetaMoments) {
  // int_0^1 u^m u^a (1-u)^b du = B(m+a+1, b+1)
  const double a = -0.5;
  const double b = -0.5;
  const QuadratureRule r = gauss_jacobi_unit(12, a, b);
  for (int m = 0; m <= 10; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], m);
    const double exact = std::tgamma(m + a + 1) * std::tgamma(b + 1) / std::tgamma(m + a + b + 2);
    EXPECT_NEAR(s, exact, 1e-13) << m;
  }
  const QuadratureRule one = gauss_jacobi_unit(1, -0.5, 0.0);
  EXPECT_NEAR(one.weights[0], 2.0, 1e-14);
  EXPECT_NEAR(one.nodes[0], 1.0 / 3.0, 1e-14);
}

TEST(GaussJacobi, Rejects) {
  EXPECT_THROW((void)gauss_jacobi(0, 0.0, 0.0), DomainError);
  EXPECT_THROW((void)gauss_jacobi(4, -1.0, 0.0), DomainError);
}
