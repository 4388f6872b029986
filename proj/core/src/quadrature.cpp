// SPDX-License-Identifier: MIT
#include "beamseek/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace beamseek {

double QuadratureRule::integrate(const std::vector<double>& f) const {
  if (f.size() != weights.size()) {
    throw std::invalid_argument("quadrature: sample count does not match rule size");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    acc += weights[j] * f[j];
  }
  return acc;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  if (!(a < b)) {
    throw std::invalid_argument("gauss_legendre: interval must satisfy a < b");
  }

  // Jacobi matrix of the Legendre recurrence: zero diagonal, off-diagonal
  // b_k = k / sqrt(4k^2 - 1). Eigenvalues are the nodes on [-1, 1]; the
  // weight for node k is 2 * (first eigenvector component)^2.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double bk = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = bk;
    jacobi(k - 1, k) = bk;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("gauss_legendre: eigen decomposition failed");
  }

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = mid + half * es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = 2.0 * v0 * v0 * half;
  }
  return rule;
}

}  // namespace beamseek
