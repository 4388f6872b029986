// SPDX-License-Identifier: MIT
#include "beamseek/dither.hpp"

#include <cmath>
#include <stdexcept>

namespace beamseek {

void validate(const DitherParams& p) {
  if (!std::isfinite(p.a) || p.a == 0.0) {
    throw std::invalid_argument("dither: amplitude a must be finite and non-zero");
  }
  if (!std::isfinite(p.omega) || p.omega <= 0.0) {
    throw std::invalid_argument("dither: omega must be finite and positive");
  }
}

TrajectorySample eval_R(const DitherParams& p, double t, double x) {
  validate(p);
  const double rw = std::sqrt(p.omega);
  const double shape = 0.5 * p.a * (std::cosh(rw * x) + std::cos(rw * x));
  const double s = std::sin(p.omega * t);
  const double c = std::cos(p.omega * t);
  return {shape * s, shape * p.omega * c, -shape * p.omega * p.omega * s};
}

double dither_amp1(const DitherParams& p) {
  validate(p);
  const double rw = std::sqrt(p.omega);
  return 0.5 * p.a * (std::cosh(rw) + std::cos(rw));
}

double dither_amp2(const DitherParams& p) {
  validate(p);
  const double rw = std::sqrt(p.omega);
  return 0.5 * p.a * p.omega * (std::cosh(rw) - std::cos(rw));
}

BoundaryDither eval_S(const DitherParams& p, double t) {
  const double s = std::sin(p.omega * t);
  return {dither_amp1(p) * s, dither_amp2(p) * s};
}

DemodSample eval_demod(const DitherParams& p, double t, double y) {
  validate(p);
  const double m = (2.0 / p.a) * std::sin(p.omega * t);
  const double n = -(8.0 / (p.a * p.a)) * std::cos(2.0 * p.omega * t);
  return {m * y, n * y};
}

}  // namespace beamseek
