#pragma once

#include <vector>

namespace mpfock {

// Nodes and weights for  integral_0^inf t^alpha e^{-t} g(t) dt ~ sum_i w_i g(t_i).
// Exact for polynomial g of degree <= 2n - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Generalized Gauss-Laguerre rule with n nodes (n >= 1, alpha > -1).
/// Nodes come from the Golub-Welsch eigenproblem and are polished by Newton
/// steps on L_n^(alpha); weights use the L_{n+1} formula, which keeps full
/// relative accuracy on the small far-tail weights.
QuadratureRule gauss_laguerre(int n, double alpha = 0.0);

}  // namespace mpfock
