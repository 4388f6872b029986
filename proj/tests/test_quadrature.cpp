// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "beamseek/quadrature.hpp"
#include "support/adaptive_gk.hpp"

using beamseek::QuadratureRule;
using beamseek::gauss_legendre;

TEST_SUITE("quadrature") {

TEST_CASE("nodes interior and increasing, weights positive and normalized") {
  for (const int n : {1, 4, 16, 64}) {
    const QuadratureRule rule = gauss_legendre(n);
    REQUIRE(rule.size() == n);
    double wsum = 0.0;
    for (int j = 0; j < n; ++j) {
      CHECK(rule.nodes[j] > 0.0);
      CHECK(rule.nodes[j] < 1.0);
      CHECK(rule.weights[j] > 0.0);
      if (j > 0) {
        CHECK(rule.nodes[j] > rule.nodes[j - 1]);
      }
      wsum += rule.weights[j];
    }
    CHECK(std::fabs(wsum - 1.0) <= 1e-14);
  }
}

TEST_CASE("exact for polynomials up to degree 2n-1") {
  const QuadratureRule rule = gauss_legendre(4);
  for (int k = 0; k <= 7; ++k) {
    double acc = 0.0;
    for (int j = 0; j < rule.size(); ++j) {
      acc += rule.weights[j] * std::pow(rule.nodes[j], k);
    }
    CHECK(std::fabs(acc - 1.0 / (k + 1)) <= 1e-14);
  }
}

TEST_CASE("smooth integrands on mapped intervals") {
  const QuadratureRule r16 = gauss_legendre(16);
  double acc = 0.0;
  for (int j = 0; j < 16; ++j) {
    acc += r16.weights[j] * std::exp(r16.nodes[j]);
  }
  CHECK(std::fabs(acc - (std::exp(1.0) - 1.0)) <= 1e-14);

  const QuadratureRule r32 = gauss_legendre(32, 1.0, 3.0);
  acc = 0.0;
  for (int j = 0; j < 32; ++j) {
    acc += r32.weights[j] / r32.nodes[j];
  }
  CHECK(std::fabs(acc - std::log(3.0)) <= 1e-14);
}

TEST_CASE("agrees with the adaptive oracle on an oscillatory integrand") {
  const QuadratureRule rule = gauss_legendre(64);
  double acc = 0.0;
  for (int j = 0; j < 64; ++j) {
    acc += rule.weights[j] * std::cos(10.0 * rule.nodes[j]);
  }
  const double ref = oracle::integrate([](double y) { return std::cos(10.0 * y); }, 0.0, 1.0);
  CHECK(std::fabs(acc - ref) <= 1e-13);
  CHECK(std::fabs(acc - std::sin(10.0) / 10.0) <= 1e-13);
}

TEST_CASE("integrate() checks the sample count") {
  const QuadratureRule rule = gauss_legendre(8);
  CHECK_THROWS_AS(rule.integrate(std::vector<double>(7)), std::invalid_argument);
  CHECK(rule.integrate(std::vector<double>(8, 2.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("rejects bad arguments") {
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(-3), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(4, 2.0, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
