#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace spherewf {

struct KsResult {
  double statistic = 0.0;    // sup |F_n - F|
  double p_value = 1.0;      // asymptotic Kolmogorov p-value
  double n_effective = 0.0;  // n, or nm/(n+m) for two samples
};

/// P(K > lambda) for the Kolmogorov distribution.
[[nodiscard]] double kolmogorov_survival(double lambda);

/// One-sample KS test of `sample` against a continuous CDF. The sample is
/// sorted in place.
[[nodiscard]] KsResult ks_one_sample(std::vector<double>& sample, const std::function<double(double)>& cdf);

/// Two-sample KS test; both samples are sorted in place.
[[nodiscard]] KsResult ks_two_sample(std::vector<double>& a, std::vector<double>& b);

/// Welford running mean and variance.
class RunningStats {
 public:
  void add(double v) noexcept {
    ++n_;
    const double d = v - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (v - mean_);
  }
  void merge(const RunningStats& o) noexcept;

  [[nodiscard]] std::int64_t count() const noexcept { return n_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  // Unbiased sample variance.
  [[nodiscard]] double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  [[nodiscard]] double standard_error() const noexcept;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Standard error of the sample variance of `v` (for 5-SE variance checks),
/// from the fourth central moment: sqrt((m4 - s^4 (n-3)/(n-1)) / n).
[[nodiscard]] double variance_standard_error(std::span<const double> v);

/// Least-squares slope and intercept of y on x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
[[nodiscard]] LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace spherewf
