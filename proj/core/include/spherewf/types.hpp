#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spherewf {

// Constraint residual tolerated after construction.
inline constexpr double kConstraintTol = 1e-12;
// Inputs whose constraint residual is below this are renormalized and
// accepted; anything larger is rejected.
inline constexpr double kRenormalizeTol = 1e-9;

/// Relative allele abundances x = (x_1, ..., x_k): nonnegative, summing to 1.
///
/// Boundary points (some x_i = 0) are valid; density evaluators that need
/// interior points check `is_interior()` themselves.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> coords);

  static SimplexPoint barycenter(int k);
  static SimplexPoint vertex(int k, int i);

  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
  [[nodiscard]] const std::vector<double>& vec() const noexcept { return coords_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return coords_[i]; }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(coords_.size()); }
  [[nodiscard]] bool is_interior() const noexcept;

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Unit vector y = (y_1, ..., y_k) on S^{k-1}.
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);

  static SpherePoint pole(int k);

  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
  [[nodiscard]] const std::vector<double>& vec() const noexcept { return coords_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return coords_[i]; }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(coords_.size()); }
  [[nodiscard]] double dot(const SpherePoint& other) const;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::vector<double> coords_;
};

/// Angles theta_1..theta_{k-1}: theta_1 in [0, 2pi), theta_i in [0, pi] for i > 1.
class SphericalCoords {
 public:
  explicit SphericalCoords(std::vector<double> angles);

  [[nodiscard]] std::span<const double> angles() const noexcept { return angles_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return angles_[i]; }
  // Ambient dimension k (one more than the number of angles).
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(angles_.size()) + 1; }

 private:
  std::vector<double> angles_;
};

/// Parameters shared by the simulators and density evaluators.
///
/// `c` is the noise scale of the neutral and sphere equations; the sphere
/// diffusion constant follows as D = c^2/8. `epsilon` holds the
/// parent-independent mutation parameters, stored per allele even when they
/// are all equal.
class ModelParams {
 public:
  ModelParams(int k, double c, std::vector<double> epsilon);
  // Common mutation parameter for every allele.
  ModelParams(int k, double c, double epsilon);

  // Interacting-particle / Moran scaling c = sqrt(lambda / (2N)).
  static ModelParams from_moran(int k, double lambda, double N, std::vector<double> epsilon);

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] double c() const noexcept { return c_; }
  [[nodiscard]] std::span<const double> epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] double mu() const noexcept { return mu_; }
  [[nodiscard]] double diffusion_constant() const noexcept { return c_ * c_ / 8.0; }
  // M_i = epsilon_i - mu x_i
  [[nodiscard]] double drift(int i, std::span<const double> x) const;
  [[nodiscard]] bool is_common() const noexcept;

 private:
  int k_;
  double c_;
  std::vector<double> epsilon_;
  double mu_;
};

/// Series cutoff policy shared by every spectral evaluator.
struct Truncation {
  int max_terms = 2000;
  double tol = 1e-15;
  // Stop only after this many successive terms fall below tol.
  int consecutive_small = 3;

  void validate() const;
};

// Positive-orthant representative y_i = +sqrt(x_i).
[[nodiscard]] SpherePoint sqrt_lift(const SimplexPoint& x);
// x_i = y_i^2.
[[nodiscard]] SimplexPoint square_push(const SpherePoint& y);

[[nodiscard]] SpherePoint cartesian_from_spherical(const SphericalCoords& theta);

struct SphericalResult {
  SphericalCoords coords;
  // True when some sin(theta_i) = 0 for i > 1, so the lower angles are not
  // determined; they are then returned as 0.
  bool degenerate = false;
};
[[nodiscard]] SphericalResult spherical_from_cartesian(const SpherePoint& y);

}  // namespace spherewf
