#pragma once

#include <vector>

namespace spherewf {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1, built from the eigen-decomposition of the Jacobi matrix
/// (Golub-Welsch).
[[nodiscard]] QuadratureRule gauss_jacobi(int n, double alpha, double beta);

[[nodiscard]] QuadratureRule gauss_legendre(int n);

/// Rule for int_0^1 f(u) u^a (1-u)^b du, i.e. Gauss-Jacobi mapped to [0, 1].
[[nodiscard]] QuadratureRule gauss_jacobi_unit(int n, double a, double b);

}  // namespace spherewf
