// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

namespace beamseek {

// Fixed Gauss-Legendre rule. Nodes are strictly increasing and interior to
// the interval; weights are positive and sum to the interval length.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }

  // Integrates samples f(nodes[j]) against the weights.
  double integrate(const std::vector<double>& f) const;
};

// n-point Gauss-Legendre rule on [a, b], exact for polynomials of degree
// 2n-1. Nodes and weights come from the symmetric tridiagonal Jacobi matrix
// (Golub-Welsch), so they inherit LAPACK-level accuracy. Throws
// std::invalid_argument for n < 1 or an empty interval.
QuadratureRule gauss_legendre(int n, double a = 0.0, double b = 1.0);

}  // namespace beamseek
