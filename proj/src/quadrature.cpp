#include "mpfock/quadrature.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "mpfock/error.hpp"

namespace mpfock {

namespace {

// Returns (L_k(x), L_{k-1}(x)) for the generalized Laguerre polynomials.
std::pair<double, double> laguerre(int k, double alpha, double x) {
  double prev = 1.0;
  if (k == 0) return {prev, 0.0};
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw ConfigError("Gauss-Laguerre rule needs at least one node");
  if (!(alpha > -1.0)) throw ConfigError("Gauss-Laguerre parameter alpha must exceed -1");

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2 * k + alpha + 1;
    if (k + 1 < n) {
      const double off = std::sqrt((k + 1) * (k + 1 + alpha));
      jacobi(k, k + 1) = off;
      jacobi(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_gamma_ratio = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = eig.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const auto [ln, lnm1] = laguerre(n, alpha, x);
      const double deriv = (n * ln - (n + alpha) * lnm1) / x;
      x -= ln / deriv;
    }
    const double lnp1 = laguerre(n + 1, alpha, x).first;
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_gamma_ratio) * x / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1);
  }
  return rule;
}

}  // namespace mpfock
