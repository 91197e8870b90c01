#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "spherewf/rng.hpp"
#include "spherewf/types.hpp"

namespace spherewf {

/// One step's antisymmetric matrix of Brownian increments db_ij.
///
/// Only the strictly lower triangle (i > j) is stored, so db(i, j) = -db(j, i)
/// holds by construction and db(i, i) = 0.
class SkewIncrements {
 public:
  explicit SkewIncrements(int k);

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] double db(int i, int j) const noexcept;
  [[nodiscard]] std::span<const double> lower() const noexcept { return lower_; }
  [[nodiscard]] std::span<double> lower() noexcept { return lower_; }

  /// Refills every entry with an independent Normal(0, dt) draw.
  void draw(double dt, Rng& rng, std::normal_distribution<double>& normal);

  [[nodiscard]] static constexpr std::size_t index(int i, int j) noexcept {
    // i > j
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(i - 1) / 2 + static_cast<std::size_t>(j);
  }

 private:
  int k_;
  std::vector<double> lower_;
};

[[nodiscard]] SkewIncrements draw_skew(int k, double dt, Rng& rng);

enum class Model { Sphere, WFNeutral, WFMutation, WFIsotropic };

[[nodiscard]] std::string_view model_name(Model m) noexcept;
[[nodiscard]] std::optional<Model> parse_model(std::string_view name) noexcept;

// ---------------------------------------------------------------------------
// In-place kernels used by the ensemble loops. The value-typed steppers below
// wrap them.

/// Raw increment of the sphere equation
///   dy_i = -(c^2/8)(k-1) y_i dt + (c/2) sum_j y_j db_ij
/// with no projection back to the sphere.
void sphere_increment(std::span<const double> y, double dt, double c, const SkewIncrements& db,
                      std::span<double> dy);

/// Euler-Maruyama step followed by projection onto the sphere. Returns the
/// pre-projection defect |sum y_i^2 - 1|.
double sphere_step_inplace(std::span<double> y, double dt, double c, const SkewIncrements& db);

struct SimplexStepInfo {
  double sum_defect = 0.0;  // |sum x_i - 1| before clamping
  bool clamped = false;
};

/// One step of a simplex model, then clamp negatives to 0 and renormalize.
///  WFNeutral:   dx_i = sum_{j} c sqrt(x_i x_j) db_ij
///  WFIsotropic: adds (c^2/4)(1 - k x_i) dt
///  WFMutation:  unit noise plus (1/2)(eps_i - mu x_i) dt, the drift of the
///               generator whose stationary law is Dirichlet(eps)
SimplexStepInfo simplex_step_inplace(Model model, std::span<double> x, double dt, const ModelParams& params,
                                     const SkewIncrements& db);

// ---------------------------------------------------------------------------

struct SphereStep {
  SpherePoint y;
  double defect;
};

struct SimplexStep {
  SimplexPoint x;
  bool clamped;
  double sum_defect;
};

[[nodiscard]] SphereStep step_sphere(const SpherePoint& y, double dt, double c, Rng& rng);
[[nodiscard]] SimplexStep step_wf_neutral(const SimplexPoint& x, double dt, double c, Rng& rng);
[[nodiscard]] SimplexStep step_wf_mutation(const SimplexPoint& x, double dt, const ModelParams& params, Rng& rng);
[[nodiscard]] SimplexStep step_wf_isotropic(const SimplexPoint& x, double dt, double c, Rng& rng);

struct PathDiagnostics {
  std::int64_t steps = 0;
  double max_defect = 0.0;      // sphere: projection defect; simplex: pre-clamp sum defect
  double mean_defect = 0.0;
  std::int64_t clamp_count = 0;
};

struct PathRecord {
  Model model = Model::Sphere;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> defects;  // defect of the step that produced each state (0 for the start)
  std::vector<int> clamped;     // clamp events since the previous record
  PathDiagnostics diagnostics;
};

/// Number of Euler steps covering [0, T]; the last one is shortened when T is
/// not a multiple of dt. Rejects dt > T.
[[nodiscard]] std::int64_t step_count(double T, double dt);

/// Runs the chosen stepper from `start` to time T, recording the start, every
/// `stride`-th state and the final state. Deterministic given the RNG state.
[[nodiscard]] PathRecord simulate_path(Model model, std::span<const double> start, double T, double dt,
                                       const ModelParams& params, Rng& rng, int stride = 1);

/// Same dynamics, returning only the state at time T.
[[nodiscard]] std::vector<double> simulate_terminal(Model model, std::span<const double> start, double T, double dt,
                                                    const ModelParams& params, Rng& rng,
                                                    PathDiagnostics* diagnostics = nullptr);

}  // namespace spherewf
