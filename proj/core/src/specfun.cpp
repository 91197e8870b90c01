#include "spherewf/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "spherewf/errors.hpp"

namespace spherewf {

namespace {

void check_gegenbauer_args(int L, double p) {
  if (L < 0) throw DomainError("gegenbauer: degree L must be >= 0");
  if (!(p > 0.0)) throw DomainError("gegenbauer: order p must be > 0");
}

}  // namespace

double gegenbauer(int L, double p, double z) {
  check_gegenbauer_args(L, p);
  if (L == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * p * z;
  for (int l = 2; l <= L; ++l) {
    const double next = (2.0 * z * (l + p - 1.0) * cur - (l + 2.0 * p - 2.0) * prev) / l;
    prev = cur;
    cur = next;
  }
  return cur;
}

void gegenbauer_sequence(double p, double z, std::span<double> out) {
  if (out.empty()) return;
  check_gegenbauer_args(0, p);
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * p * z;
  for (std::size_t l = 2; l < out.size(); ++l) {
    const double ld = static_cast<double>(l);
    out[l] = (2.0 * z * (ld + p - 1.0) * out[l - 1] - (ld + 2.0 * p - 2.0) * out[l - 2]) / ld;
  }
}

double gegenbauer_explicit(int L, double p, double z) {
  check_gegenbauer_args(L, p);
  using Wide = boost::multiprecision::cpp_bin_float_50;
  const Wide pw = p;
  const Wide two_z = Wide(2) * Wide(z);
  Wide sum = 0;
  for (int j = 0; j <= L / 2; ++j) {
    // (p)_{L-j} / (j! (L-2j)!)
    Wide coef = 1;
    for (int i = 0; i < L - j; ++i) coef *= pw + i;
    for (int i = 2; i <= j; ++i) coef /= i;
    for (int i = 2; i <= L - 2 * j; ++i) coef /= i;
    Wide power = 1;
    for (int i = 0; i < L - 2 * j; ++i) power *= two_z;
    const Wide term = coef * power;
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum.convert_to<double>();
}

double generating_function_residual(double p, double z, double h, int L_max) {
  if (!(std::abs(h) < 1.0)) throw DomainError("generating_function_residual: |h| must be < 1");
  if (L_max < 0) throw DomainError("generating_function_residual: L_max must be >= 0");
  const double exact = std::pow(1.0 - 2.0 * z * h + h * h, -p);
  double partial = 0.0;
  double h_pow = 1.0;
  double prev = 1.0;
  double cur = 2.0 * p * z;
  for (int l = 0; l <= L_max; ++l) {
    double c = 0.0;
    if (l == 0) {
      c = 1.0;
    } else if (l == 1) {
      c = cur;
    } else {
      const double next = (2.0 * z * (l + p - 1.0) * cur - (l + 2.0 * p - 2.0) * prev) / l;
      prev = cur;
      cur = next;
      c = cur;
    }
    partial += c * h_pow;
    h_pow *= h;
  }
  return std::abs(exact - partial);
}

double pochhammer(double a, int m) {
  if (m < 0) throw DomainError("pochhammer: m must be >= 0");
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= a + i;
  return r;
}

SignedLog log_pochhammer(double a, int m) {
  if (m < 0) throw DomainError("log_pochhammer: m must be >= 0");
  SignedLog out{0.0, 1};
  for (int i = 0; i < m; ++i) {
    const double f = a + i;
    if (f == 0.0) return {-INFINITY, 0};
    if (f < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(f));
  }
  return out;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be > 0");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double sphere_surface_area(int k) {
  if (k < 1) throw DomainError("sphere_surface_area: k must be >= 1");
  const double half = 0.5 * k;
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - log_gamma(half));
}

}  // namespace spherewf
