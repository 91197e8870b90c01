#include "spherewf/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "spherewf/errors.hpp"
#include "spherewf/specfun.hpp"

namespace spherewf {

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: alpha, beta must exceed -1");

  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int i = 1; i < n; ++i) {
    const double s = 2.0 * i + ab;
    diag(i) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int i = 1; i < n; ++i) {
    const double s = 2.0 * i + ab;
    // (i + ab) / (s - 1) is exactly 1 at i = 1; keep it symbolic there so
    // alpha + beta = -1 (Chebyshev) does not produce 0/0.
    const double ratio = (i == 1) ? 1.0 : (i + ab) / (s - 1.0);
    const double b2 = 4.0 * i * (i + alpha) * (i + beta) * ratio / (s * s * (s + 1.0));
    sub(i - 1) = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n == 1) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = diag(0);
    solver.compute(m);
  } else {
    solver.computeFromTridiagonal(diag, sub.head(n - 1));
  }

  const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) -
                         log_gamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule gauss_jacobi_unit(int n, double a, double b) {
  // u = (1 + x)/2: u^a (1-u)^b du = 2^{-(a+b+1)} (1+x)^a (1-x)^b dx
  QuadratureRule rule = gauss_jacobi(n, b, a);
  const double scale = std::pow(2.0, -(a + b + 1.0));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] *= scale;
  }
  return rule;
}

}  // namespace spherewf
