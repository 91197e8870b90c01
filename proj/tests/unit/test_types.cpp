#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spherewf/errors.hpp"
#include "spherewf/types.hpp"

using namespace spherewf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(SimplexPoint, AcceptsValidAndRenormalizesTinyResidual) {
  const SimplexPoint x({0.2, 0.3, 0.5});
  EXPECT_EQ(x.dim(), 3);
  const SimplexPoint y({0.2, 0.3, 0.5 + 5e-10});
  double s = 0.0;
  for (double v : y.coords()) s += v;
  EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(SimplexPoint, RejectsOutOfTolerance) {
  EXPECT_THROW(SimplexPoint({0.5, 0.3, 0.1}), DomainError);
  EXPECT_THROW(SimplexPoint({1.1, -0.1}), DomainError);
  EXPECT_THROW(SimplexPoint({1.0}), DomainError);
  EXPECT_THROW(SimplexPoint({NAN, 1.0}), DomainError);
}

TEST(SimplexPoint, BoundaryIsValidButNotInterior) {
  const SimplexPoint v = SimplexPoint::vertex(3, 0);
  EXPECT_FALSE(v.is_interior());
  EXPECT_TRUE(SimplexPoint::barycenter(4).is_interior());
}

TEST(SpherePoint, ValidatesNorm) {
  EXPECT_NO_THROW(SpherePoint({0.6, 0.8}));
  EXPECT_THROW(SpherePoint({0.6, 0.7}), DomainError);
  const SpherePoint p = SpherePoint::pole(3);
  EXPECT_EQ(p[2], 1.0);
}

TEST(ModelParams, DerivedQuantities) {
  const ModelParams p(3, 2.0, std::vector<double>{0.5, 1.0, 1.5});
  EXPECT_DOUBLE_EQ(p.mu(), 3.0);
  EXPECT_DOUBLE_EQ(p.diffusion_constant(), 0.5);
  const std::vector<double> x = {0.2, 0.3, 0.5};
  EXPECT_DOUBLE_EQ(p.drift(0, x), 0.5 - 3.0 * 0.2);
  EXPECT_FALSE(p.is_common());
  EXPECT_TRUE(ModelParams(3, 1.0, 0.5).is_common());
}

TEST(ModelParams, DriftSumsToZero) {
  const ModelParams p(4, 1.0, std::vector<double>{0.1, 0.7, 2.0, 0.3});
  const std::vector<double> x = {0.1, 0.2, 0.3, 0.4};
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += p.drift(i, x);
  EXPECT_NEAR(s, 0.0, 1e-15);
}

TEST(ModelParams, FromMoran) {
  const ModelParams p = ModelParams::from_moran(2, 1.0, 100.0, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(p.c(), std::sqrt(1.0 / 200.0));
}

TEST(ModelParams, Rejects) {
  EXPECT_THROW(ModelParams(1, 1.0, 0.5), DomainError);
  EXPECT_THROW(ModelParams(3, 0.0, 0.5), DomainError);
  EXPECT_THROW(ModelParams(3, 1.0, -0.1), DomainError);
  EXPECT_THROW(ModelParams(3, 1.0, std::vector<double>{0.5, 0.5}), DomainError);
}

TEST(Truncation, Validate) {
  EXPECT_NO_THROW(Truncation{}.validate());
  EXPECT_THROW((Truncation{0, 1e-12, 3}).validate(), DomainError);
  EXPECT_THROW((Truncation{10, 0.0, 3}).validate(), DomainError);
  EXPECT_THROW((Truncation{10, 1e-12, 0}).validate(), DomainError);
}

TEST(SqrtLift, Examples) {
  const SpherePoint v = sqrt_lift(SimplexPoint({1.0, 0.0, 0.0}));
  EXPECT_EQ(v.vec(), (std::vector<double>{1.0, 0.0, 0.0}));
  const SpherePoint y = sqrt_lift(SimplexPoint({0.25, 0.25, 0.5}));
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], 0.5);
  EXPECT_NEAR(y[2], 1.0 / std::sqrt(2.0), 2e-16);
}

TEST(SquarePush, Examples) {
  EXPECT_EQ(square_push(SpherePoint({0.0, 1.0, 0.0})).vec(), (std::vector<double>{0.0, 1.0, 0.0}));
  const double r = 1.0 / std::sqrt(2.0);
  const SimplexPoint a = square_push(SpherePoint({r, -r, 0.0}));
  EXPECT_NEAR(a[0], 0.5, 2e-16);
  EXPECT_NEAR(a[1], 0.5, 2e-16);
  EXPECT_EQ(a[2], 0.0);
  const SimplexPoint b = square_push(SpherePoint({0.5, 0.5, r}));
  EXPECT_NEAR(b[0], 0.25, 2e-16);
  EXPECT_NEAR(b[2], 0.5, 2e-16);
}

TEST(SquarePush, RoundTrips) {
  std::mt19937_64 rng(7);
  std::exponential_distribution<double> e;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 5;
    std::vector<double> v(static_cast<std::size_t>(k));
    double s = 0.0;
    for (double& a : v) s += (a = e(rng));
    for (double& a : v) a /= s;
    const SimplexPoint x(v);
    const SimplexPoint back = square_push(sqrt_lift(x));
    for (int i = 0; i < k; ++i) EXPECT_NEAR(back[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i)], 1e-15);
    // sqrt_lift . square_push is the identity on the positive orthant
    const SpherePoint y = sqrt_lift(x);
    const SpherePoint y2 = sqrt_lift(square_push(y));
    for (int i = 0; i < k; ++i) EXPECT_NEAR(y2[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i)], 1e-15);
  }
}

TEST(SphericalCoords, Validation) {
  EXPECT_THROW(SphericalCoords({2 * kPi}), DomainError);
  EXPECT_THROW(SphericalCoords({0.1, -0.1}), DomainError);
  EXPECT_THROW(SphericalCoords({0.1, 3.5}), DomainError);
  EXPECT_EQ(SphericalCoords({0.1, 0.2, 0.3}).dim(), 4);
}

TEST(CartesianFromSpherical, Examples) {
  const SpherePoint a = cartesian_from_spherical(SphericalCoords({0.0, kPi / 2}));
  EXPECT_NEAR(a[0], 0.0, 1e-16);
  EXPECT_NEAR(a[1], 1.0, 1e-16);
  EXPECT_NEAR(a[2], 0.0, 1e-16);
  const SpherePoint b = cartesian_from_spherical(SphericalCoords({0.0}));
  EXPECT_NEAR(b[0], 0.0, 1e-16);
  EXPECT_NEAR(b[1], 1.0, 1e-16);
}

TEST(CartesianFromSpherical, UnitNormAndRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + trial % 6;
    std::vector<double> th(static_cast<std::size_t>(k - 1));
    th[0] = 2 * kPi * u(rng);
    for (std::size_t i = 1; i < th.size(); ++i) th[i] = kPi * (0.001 + 0.998 * u(rng));
    const SpherePoint y = cartesian_from_spherical(SphericalCoords(th));
    double n2 = 0.0;
    for (double v : y.coords()) n2 += v * v;
    EXPECT_NEAR(n2, 1.0, 1e-14);
    const SphericalResult back = spherical_from_cartesian(y);
    EXPECT_FALSE(back.degenerate);
    for (std::size_t i = 0; i < th.size(); ++i) EXPECT_NEAR(back.coords[i], th[i], 1e-12) << "k=" << k << " i=" << i;
  }
}

TEST(SphericalFromCartesian, PoleIsDegenerate) {
  const SphericalResult r = spherical_from_cartesian(SpherePoint({0.0, 0.0, 1.0}));
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.coords[0], 0.0);
  EXPECT_NEAR(r.coords[1], 0.0, 1e-16);
  const SphericalResult s = spherical_from_cartesian(SpherePoint({0.0, 0.0, -1.0}));
  EXPECT_TRUE(s.degenerate);
  EXPECT_NEAR(s.coords[1], kPi, 1e-15);
}
