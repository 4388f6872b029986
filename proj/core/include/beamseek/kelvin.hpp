// SPDX-License-Identifier: MIT
#pragma once

namespace beamseek {

struct KelvinPair {
  double ber1;
  double bei1;
};

// Order-1 Kelvin functions ber1(z), bei1(z) for real z >= 0, defined by
// ber1(z) + i*bei1(z) = J1(z * exp(3*pi*i/4)).
//
// Evaluated with the ascending power series; terms are added until the next
// one drops below 1e-16 of the running magnitude, so small arguments are
// exact to machine precision. The series alternates in blocks of two, which
// costs accuracy through cancellation as z grows; arguments up to z ~= 20
// keep at least 12 significant digits, far beyond what the kernel evaluation
// here ever needs (z <= sqrt(c) for domain coefficients c of order one).
//
// Throws std::domain_error for negative or non-finite z.
KelvinPair kelvin1(double z);

}  // namespace beamseek
