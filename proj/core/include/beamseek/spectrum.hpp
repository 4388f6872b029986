// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace beamseek {

// Numerical spectrum of the closed-loop target dynamics: the damped beam
//   zeta_tt + 2 c zeta_t + c^2 zeta + zeta_xxxx = 0
// with the homogeneous plant boundary conditions (sliding root, held tip)
// plus the scalar tracking mode  thetadot = -kbar * theta + zeta_t(0) + c zeta(0).
// The coupling is one-way, so the exact spectrum is {-kbar} together with
// -c +- i w_n, where w_n = ((2n+1) pi / 2)^2 are the undamped beam
// frequencies. The report compares an FEM discretization against these
// predictions.
struct SpectrumConfig {
  double c{0.1};
  double kbar{0.1};
  int n_elems{200};
  int n_modes{4};  // conjugate pairs to match, besides the real mode
};

struct ModeMatch {
  std::complex<double> predicted;
  std::complex<double> computed;  // meaningful only when matched
  double abs_err{0.0};
  double rel_err{0.0};
  bool matched{false};
};

struct SpectrumReport {
  SpectrumConfig config;
  // [0] is the real adaptation mode -kbar; then n_modes entries for the
  // upper-half-plane member of each conjugate pair (the mate is implied).
  std::vector<ModeMatch> modes;
  int n_matched{0};
  double max_rel_err{0.0};  // over matched modes
};

// Assembles the first-order closed-loop operator on the constrained FEM
// space and computes its full spectrum, then pairs the 2*n_modes+1
// eigenvalues of smallest |Im| against the predictions (nearest neighbour,
// rejection radius 10% of the gap between consecutive predictions).
// Requires n_elems >= 8*n_modes (resolution margin), else throws
// std::invalid_argument.
SpectrumReport target_spectrum(const SpectrumConfig& cfg);

// Aligned human-readable table.
void print_spectrum(const SpectrumReport& report, std::ostream& os);

// One row per mode: re/im of prediction and computed value plus errors.
void write_spectrum_csv(const SpectrumReport& report, std::ostream& os);

}  // namespace beamseek
