// SPDX-License-Identifier: MIT
#include "beamseek/kelvin.hpp"

#include <cmath>
#include <stdexcept>

namespace beamseek {

KelvinPair kelvin1(double z) {
  if (!std::isfinite(z) || z < 0.0) {
    throw std::domain_error("kelvin1: argument must be finite and non-negative");
  }

  // J1(z e^{3 pi i/4}) = sum_k (z/2)^{2k+1} / (k! (k+1)!) * e^{i phi_k},
  // phi_k = 3*pi*(2k+1)/4 + pi*k. The phase walks a period-4 sign pattern
  // with constant magnitude sqrt(2)/2:
  //   Re (ber1): -, -, +, +   Im (bei1): +, -, -, +
  static constexpr double sgn_ber[4] = {-1.0, -1.0, 1.0, 1.0};
  static constexpr double sgn_bei[4] = {1.0, -1.0, -1.0, 1.0};

  const double zh2 = 0.25 * z * z;  // (z/2)^2
  double magnitude = 0.5 * z;       // (z/2)^{2k+1} / (k! (k+1)!) at k = 0
  double ber = 0.0;
  double bei = 0.0;
  for (int k = 0; k < 400; ++k) {
    ber += sgn_ber[k % 4] * magnitude;
    bei += sgn_bei[k % 4] * magnitude;
    magnitude *= zh2 / ((k + 1.0) * (k + 2.0));
    const double scale = std::max({std::fabs(ber), std::fabs(bei), 1e-300});
    if (magnitude < 1e-16 * scale) {
      const double half_sqrt2 = std::sqrt(2.0) / 2.0;
      return {half_sqrt2 * ber, half_sqrt2 * bei};
    }
  }
  throw std::runtime_error("kelvin1: series failed to converge (argument too large)");
}

}  // namespace beamseek
