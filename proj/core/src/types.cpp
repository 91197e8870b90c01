#include "spherewf/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "spherewf/errors.hpp"

namespace spherewf {

namespace {

void require_dim(std::size_t n, const char* what) {
  if (n < 2) {
    throw DomainError(std::string(what) + ": dimension must be at least 2");
  }
}

void require_finite(std::span<const double> v, const char* what) {
  for (double a : v) {
    if (!std::isfinite(a)) {
      throw DomainError(std::string(what) + ": non-finite coordinate");
    }
  }
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  require_dim(coords_.size(), "SimplexPoint");
  require_finite(coords_, "SimplexPoint");
  for (double& a : coords_) {
    if (a < -kRenormalizeTol) {
      throw DomainError("SimplexPoint: negative coordinate " + std::to_string(a));
    }
    a = std::max(a, 0.0);
  }
  const double sum = std::accumulate(coords_.begin(), coords_.end(), 0.0);
  if (std::abs(sum - 1.0) > kRenormalizeTol) {
    throw DomainError("SimplexPoint: coordinates sum to " + std::to_string(sum) + ", expected 1");
  }
  if (sum != 1.0) {
    for (double& a : coords_) a /= sum;
  }
}

SimplexPoint SimplexPoint::barycenter(int k) {
  if (k < 2) throw DomainError("SimplexPoint::barycenter: k must be at least 2");
  return SimplexPoint(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

SimplexPoint SimplexPoint::vertex(int k, int i) {
  if (k < 2 || i < 0 || i >= k) throw DomainError("SimplexPoint::vertex: bad index");
  std::vector<double> v(static_cast<std::size_t>(k), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return SimplexPoint(std::move(v));
}

bool SimplexPoint::is_interior() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](double a) { return a > 0.0; });
}

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  require_dim(coords_.size(), "SpherePoint");
  require_finite(coords_, "SpherePoint");
  double norm2 = 0.0;
  for (double a : coords_) norm2 += a * a;
  if (std::abs(norm2 - 1.0) > kRenormalizeTol) {
    throw DomainError("SpherePoint: squared norm " + std::to_string(norm2) + ", expected 1");
  }
  if (norm2 != 1.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& a : coords_) a *= inv;
  }
}

SpherePoint SpherePoint::pole(int k) {
  if (k < 2) throw DomainError("SpherePoint::pole: k must be at least 2");
  std::vector<double> v(static_cast<std::size_t>(k), 0.0);
  v.back() = 1.0;
  return SpherePoint(std::move(v));
}

double SpherePoint::dot(const SpherePoint& other) const {
  if (other.dim() != dim()) throw DomainError("SpherePoint::dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

SphericalCoords::SphericalCoords(std::vector<double> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) throw DomainError("SphericalCoords: need at least one angle");
  require_finite(angles_, "SphericalCoords");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (angles_[0] < 0.0 || angles_[0] >= two_pi) {
    throw DomainError("SphericalCoords: theta_1 must lie in [0, 2pi)");
  }
  for (std::size_t i = 1; i < angles_.size(); ++i) {
    if (angles_[i] < 0.0 || angles_[i] > std::numbers::pi) {
      throw DomainError("SphericalCoords: theta_" + std::to_string(i + 1) + " must lie in [0, pi]");
    }
  }
}

ModelParams::ModelParams(int k, double c, std::vector<double> epsilon)
    : k_(k), c_(c), epsilon_(std::move(epsilon)), mu_(0.0) {
  if (k_ < 2) throw DomainError("ModelParams: k must be at least 2");
  if (!(c_ > 0.0) || !std::isfinite(c_)) throw DomainError("ModelParams: c must be positive");
  if (epsilon_.size() != static_cast<std::size_t>(k_)) {
    throw DomainError("ModelParams: epsilon must have k entries");
  }
  for (double e : epsilon_) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("ModelParams: epsilon_i must be >= 0");
  }
  mu_ = std::accumulate(epsilon_.begin(), epsilon_.end(), 0.0);
}

ModelParams::ModelParams(int k, double c, double epsilon)
    : ModelParams(k, c, std::vector<double>(static_cast<std::size_t>(std::max(k, 0)), epsilon)) {}

ModelParams ModelParams::from_moran(int k, double lambda, double N, std::vector<double> epsilon) {
  if (!(lambda > 0.0) || !(N > 0.0)) throw DomainError("ModelParams::from_moran: lambda and N must be positive");
  return ModelParams(k, std::sqrt(lambda / (2.0 * N)), std::move(epsilon));
}

double ModelParams::drift(int i, std::span<const double> x) const {
  return epsilon_[static_cast<std::size_t>(i)] - mu_ * x[static_cast<std::size_t>(i)];
}

bool ModelParams::is_common() const noexcept {
  return std::all_of(epsilon_.begin(), epsilon_.end(), [&](double e) { return e == epsilon_.front(); });
}

void Truncation::validate() const {
  if (max_terms < 1) throw DomainError("Truncation: max_terms must be >= 1");
  if (!(tol > 0.0)) throw DomainError("Truncation: tol must be > 0");
  if (consecutive_small < 1) throw DomainError("Truncation: consecutive_small must be >= 1");
}

SpherePoint sqrt_lift(const SimplexPoint& x) {
  std::vector<double> y(x.coords().begin(), x.coords().end());
  for (double& a : y) a = std::sqrt(a);
  return SpherePoint(std::move(y));
}

SimplexPoint square_push(const SpherePoint& y) {
  std::vector<double> x(y.coords().begin(), y.coords().end());
  for (double& a : x) a *= a;
  return SimplexPoint(std::move(x));
}

// y_1 = sin(t_{k-1})...sin(t_2) sin(t_1)
// y_j = sin(t_{k-1})...sin(t_j) cos(t_{j-1}),  j = 2..k
SpherePoint cartesian_from_spherical(const SphericalCoords& theta) {
  const auto k = static_cast<std::size_t>(theta.dim());
  std::vector<double> y(k);
  double tail = 1.0;  // product of sin(theta_i) for i >= j
  for (std::size_t j = k; j >= 2; --j) {
    y[j - 1] = tail * std::cos(theta[j - 2]);
    tail *= std::sin(theta[j - 2]);
  }
  y[0] = tail;
  return SpherePoint(std::move(y));
}

SphericalResult spherical_from_cartesian(const SpherePoint& y) {
  const auto k = static_cast<std::size_t>(y.dim());
  std::vector<double> theta(k - 1, 0.0);
  bool degenerate = false;
  // partial[j] = sqrt(y_1^2 + ... + y_j^2) = sin(theta_{k-1})...sin(theta_j)
  std::vector<double> partial(k + 1, 0.0);
  double acc = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    acc += y[j - 1] * y[j - 1];
    partial[j] = std::sqrt(acc);
  }
  for (std::size_t j = k; j >= 3; --j) {
    theta[j - 2] = std::atan2(partial[j - 1], y[j - 1]);
    if (partial[j - 1] == 0.0) degenerate = true;
  }
  double t1 = std::atan2(y[0], y[1]);
  if (t1 < 0.0) t1 += 2.0 * std::numbers::pi;
  if (t1 >= 2.0 * std::numbers::pi) t1 = 0.0;
  theta[0] = t1;
  return {SphericalCoords(std::move(theta)), degenerate};
}

}  // namespace spherewf
