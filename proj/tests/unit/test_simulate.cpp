#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "spherewf/errors.hpp"
#include "spherewf/rng.hpp"
#include "spherewf/simulate.hpp"

using namespace spherewf;

namespace {

// Sample covariance matrix of one-step increments and its standard errors.
struct Moments {
  std::vector<double> mean;
  std::vector<std::vector<double>> cov;
  std::vector<std::vector<double>> cov_se;
};

Moments one_step_moments(const std::vector<std::vector<double>>& dx) {
  const std::size_t n = dx.size();
  const std::size_t k = dx[0].size();
  Moments m;
  m.mean.assign(k, 0.0);
  for (const auto& d : dx) {
    for (std::size_t i = 0; i < k; ++i) m.mean[i] += d[i] / n;
  }
  m.cov.assign(k, std::vector<double>(k, 0.0));
  m.cov_se.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      double s2 = 0.0;
      for (const auto& d : dx) {
        const double p = (d[i] - m.mean[i]) * (d[j] - m.mean[j]);
        s += p;
        s2 += p * p;
      }
      m.cov[i][j] = s / n;
      m.cov_se[i][j] = std::sqrt((s2 / n - m.cov[i][j] * m.cov[i][j]) / n);
    }
  }
  return m;
}

}  // namespace

TEST(SkewIncrements, Antisymmetric) {
  Rng rng = make_stream(31, 0);
  const SkewIncrements db = draw_skew(5, 0.01, rng);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(db.db(i, i), 0.0);
    for (int j = 0; j < 5; ++j) EXPECT_EQ(db.db(i, j), -db.db(j, i));
  }
  EXPECT_EQ(db.lower().size(), 10u);
  EXPECT_THROW((void)draw_skew(3, 0.0, rng), DomainError);
}

TEST(SkewIncrements, Variance) {
  Rng rng = make_stream(32, 0);
  const double dt = 0.01;
  const int n = 100000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_skew(3, dt, rng).db(2, 1);
    s += v;
    s2 += v * v;
  }
  const double var = s2 / n - (s / n) * (s / n);
  EXPECT_NEAR(var, dt, dt * 5.0 / std::sqrt(n) * std::sqrt(2.0));
}

TEST(Model, NamesRoundTrip) {
  for (Model m : {Model::Sphere, Model::WFNeutral, Model::WFMutation, Model::WFIsotropic}) {
    EXPECT_EQ(parse_model(model_name(m)), m);
  }
  EXPECT_FALSE(parse_model("brownian").has_value());
}

TEST(StepSphere, ZeroNoiseShrinksRadius) {
  const SkewIncrements zero(3);
  const std::vector<double> y = {0.6, 0.0, 0.8};
  std::vector<double> dy(3);
  const double c = 1.0;
  const double dt = 0.01;
  sphere_increment(y, dt, c, zero, dy);
  double n2 = 0.0;
  for (int i = 0; i < 3; ++i) n2 += (y[i] + dy[i]) * (y[i] + dy[i]);
  const double shrink = 1.0 - c * c * 2 * dt / 8.0;
  EXPECT_NEAR(n2, shrink * shrink, 1e-15);
  EXPECT_LT(n2, 1.0);
  std::vector<double> w = y;
  const double defect = sphere_step_inplace(w, dt, c, zero);
  EXPECT_NEAR(defect, 1.0 - shrink * shrink, 1e-15);
  EXPECT_NEAR(w[0] * w[0] + w[1] * w[1] + w[2] * w[2], 1.0, 1e-15);
}

TEST(StepSphere, MeanDefectIsSmall) {
  Rng rng = make_stream(33, 0);
  SpherePoint y = SpherePoint::pole(3);
  double total = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const SphereStep s = step_sphere(y, 1e-4, 1.0, rng);
    total += s.defect;
    y = s.y;
  }
  EXPECT_LT(total / 10000, 1e-3);
}

TEST(StepSphere, OneStepMeanFollowsDrift) {
  Rng rng = make_stream(34, 0);
  const SpherePoint y({0.6, 0.0, 0.8});
  const double dt = 0.01;
  const int n = 100000;
  std::vector<std::vector<double>> dx;
  dx.reserve(n);
  for (int i = 0; i < n; ++i) {
    const SphereStep s = step_sphere(y, dt, 1.0, rng);
    dx.push_back({s.y[0], s.y[1], s.y[2]});
  }
  const Moments m = one_step_moments(dx);
  const double factor = 1.0 - 2 * dt / 8.0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(m.mean[i], factor * y[i], 5 * std::sqrt(m.cov[i][i] / n) + 1e-12) << i;
  }
}

TEST(StepWfNeutral, VertexIsAbsorbing) {
  Rng rng = make_stream(35, 0);
  const SimplexPoint v = SimplexPoint::vertex(3, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(step_wf_neutral(v, 0.01, 1.0, rng).x, v);
}

TEST(StepWfNeutral, ConservesSumBeforeClamping) {
  Rng rng = make_stream(36, 0);
  SimplexPoint x({0.1, 0.2, 0.3, 0.4});
  for (int i = 0; i < 10000; ++i) {
    const SimplexStep s = step_wf_neutral(x, 1e-3, 1.0, rng);
    ASSERT_LT(s.sum_defect, 1e-12);
    x = s.x;
  }
}

TEST(StepWfNeutral, OneStepCovariance) {
  Rng rng = make_stream(37, 0);
  const SimplexPoint x({0.5, 0.3, 0.2});
  const double dt = 1e-3;
  const double c = 1.0;
  const int n = 100000;
  std::vector<std::vector<double>> dx;
  dx.reserve(n);
  for (int i = 0; i < n; ++i) {
    const SimplexStep s = step_wf_neutral(x, dt, c, rng);
    dx.push_back({s.x[0] - x[0], s.x[1] - x[1], s.x[2] - x[2]});
  }
  const Moments m = one_step_moments(dx);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double expected = c * c * x[i] * ((i == j ? 1.0 : 0.0) - x[j]) * dt;
      EXPECT_NEAR(m.cov[i][j], expected, 5 * m.cov_se[i][j]) << i << "," << j;
    }
  }
}

TEST(StepWfMutation, DriftPreservesSimplex) {
  const ModelParams p(3, 1.0, std::vector<double>{0.2, 0.5, 1.1});
  Rng rng = make_stream(38, 0);
  SimplexPoint x({0.3, 0.3, 0.4});
  for (int i = 0; i < 5000; ++i) {
    const SimplexStep s = step_wf_mutation(x, 1e-3, p, rng);
    ASSERT_LT(s.sum_defect, 1e-12);
    x = s.x;
  }
}

TEST(StepWfMutation, HalfEpsilonMatchesIsotropicStep) {
  // Same increments: the eps = 1/2 mutation step and the c = 1 isotropic step coincide.
  const int k = 4;
  const ModelParams p(k, 1.0, 0.5);
  const SimplexPoint x({0.1, 0.2, 0.3, 0.4});
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng a = make_stream(39, s);
    Rng b = make_stream(39, s);
    const SimplexStep m = step_wf_mutation(x, 1e-3, p, a);
    const SimplexStep iso = step_wf_isotropic(x, 1e-3, 1.0, b);
    for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(m.x[i], iso.x[i], 1e-16);
  }
}

TEST(StepWfMutation, OneStepMeanAndCovarianceAtHalfEpsilon) {
  Rng rng = make_stream(40, 0);
  const ModelParams p(3, 1.0, 0.5);
  const SimplexPoint x({0.5, 0.3, 0.2});
  const double dt = 1e-3;
  const int n = 100000;
  std::vector<std::vector<double>> dx;
  for (int i = 0; i < n; ++i) {
    const SimplexStep s = step_wf_mutation(x, dt, p, rng);
    dx.push_back({s.x[0] - x[0], s.x[1] - x[1], s.x[2] - x[2]});
  }
  const Moments m = one_step_moments(dx);
  for (std::size_t i = 0; i < 3; ++i) {
    // (1/2) M_i = (1/4)(1 - k x_i), the isotropic drift at c = 1
    EXPECT_NEAR(m.mean[i], 0.25 * (1.0 - 3 * x[i]) * dt, 5 * std::sqrt(m.cov[i][i] / n));
    for (std::size_t j = 0; j < 3; ++j) {
      const double expected = x[i] * ((i == j ? 1.0 : 0.0) - x[j]) * dt;
      EXPECT_NEAR(m.cov[i][j], expected, 5 * m.cov_se[i][j]);
    }
  }
}

TEST(StepWfIsotropic, BarycenterZeroesDrift) {
  const ModelParams p(4, 1.0, 0.5);
  std::vector<double> x(4, 0.25);
  simplex_step_inplace(Model::WFIsotropic, x, 0.1, p, SkewIncrements(4));
  for (double v : x) EXPECT_NEAR(v, 0.25, 1e-16);
}

namespace {

double clamp_frequency(double dt, int paths, std::uint64_t seed) {
  const ModelParams p(3, 1.0, 0.5);
  std::int64_t clamps = 0;
  std::int64_t steps = 0;
  for (int i = 0; i < paths; ++i) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
    PathDiagnostics diag;
    (void)simulate_terminal(Model::WFIsotropic, SimplexPoint::barycenter(3).coords(), 1.0, dt, p, rng, &diag);
    clamps += diag.clamp_count;
    steps += diag.steps;
  }
  return static_cast<double>(clamps) / static_cast<double>(steps);
}

}  // namespace

TEST(StepWfIsotropic, ClampFrequencyShrinksWithStep) {
  // Near x_i = 0 the drift c^2/4 is half the noise coefficient c^2, so the
  // face is reached in finite time and Euler overshoots there at a rate that
  // scales like sqrt(dt) (about 2e-3 at dt = 1e-4).
  const double coarse = clamp_frequency(1e-4, 100, 41);
  const double fine = clamp_frequency(1e-4 / 16, 30, 42);
  EXPECT_GT(coarse, 0.0);
  EXPECT_LT(coarse, 5e-3);
  EXPECT_GT(coarse / fine, 2.5);
  EXPECT_LT(coarse / fine, 6.5);
}

TEST(SimulatePath, SingleStep) {
  Rng rng = make_stream(42, 0);
  const PathRecord r = simulate_path(Model::Sphere, SpherePoint::pole(3).coords(), 1e-3, 1e-3, ModelParams(3, 1.0, 0.5), rng);
  ASSERT_EQ(r.times.size(), 2u);
  EXPECT_EQ(r.times[1], 1e-3);
  EXPECT_EQ(r.diagnostics.steps, 1);
}

TEST(SimulatePath, StrideAndFinalState) {
  Rng rng = make_stream(43, 0);
  const PathRecord r =
      simulate_path(Model::WFNeutral, SimplexPoint::barycenter(3).coords(), 1.0, 0.1, ModelParams(3, 1.0, 0.0), rng, 3);
  const std::vector<double> expected = {0.0, 0.30000000000000004, 0.6000000000000001, 0.9, 1.0};
  ASSERT_EQ(r.times.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(r.times[i], expected[i], 1e-15);
  for (std::size_t i = 1; i < r.times.size(); ++i) EXPECT_GT(r.times[i], r.times[i - 1]);
  for (const auto& s : r.states) EXPECT_EQ(s.size(), 3u);
}

TEST(SimulatePath, ShortensLastStep) {
  EXPECT_EQ(step_count(1.0, 0.3), 4);
  EXPECT_EQ(step_count(1.0, 0.1), 10);
  EXPECT_THROW((void)step_count(0.1, 0.2), DomainError);
  EXPECT_THROW((void)step_count(1.0, 0.0), DomainError);
}

TEST(SimulatePath, Deterministic) {
  const ModelParams p(3, 1.0, std::vector<double>{0.5, 1.0, 1.5});
  Rng a = make_stream(44, 7);
  Rng b = make_stream(44, 7);
  const std::vector<double> x0 = {0.2, 0.3, 0.5};
  const PathRecord ra = simulate_path(Model::WFMutation, x0, 0.5, 1e-3, p, a, 10);
  const PathRecord rb = simulate_path(Model::WFMutation, x0, 0.5, 1e-3, p, b, 10);
  EXPECT_EQ(ra.times, rb.times);
  EXPECT_EQ(ra.states, rb.states);
  EXPECT_EQ(ra.defects, rb.defects);
  EXPECT_EQ(ra.clamped, rb.clamped);
}

TEST(SimulatePath, SphereDefectDiagnostics) {
  Rng rng = make_stream(45, 0);
  const PathRecord r =
      simulate_path(Model::Sphere, SpherePoint::pole(3).coords(), 1.0, 1e-4, ModelParams(3, 1.0, 0.5), rng, 100);
  EXPECT_LT(r.diagnostics.max_defect, 1e-2);
  EXPECT_LT(r.diagnostics.mean_defect, 1e-3);
}

TEST(SimulatePath, RejectsBadInput) {
  Rng rng = make_stream(46, 0);
  const ModelParams p(3, 1.0, 0.5);
  const std::vector<double> bad = {0.5, 0.5};
  EXPECT_THROW((void)simulate_path(Model::WFNeutral, bad, 1.0, 0.1, p, rng), DomainError);
  const std::vector<double> off = {0.5, 0.3, 0.1};
  EXPECT_THROW((void)simulate_path(Model::WFNeutral, off, 1.0, 0.1, p, rng), DomainError);
  const std::vector<double> x = {0.5, 0.3, 0.2};
  EXPECT_THROW((void)simulate_path(Model::WFNeutral, x, 1.0, 2.0, p, rng), DomainError);
  EXPECT_THROW((void)simulate_path(Model::WFNeutral, x, 1.0, 0.1, p, rng, 0), DomainError);
}
