// SPDX-License-Identifier: MIT
#pragma once

namespace beamseek {

// Probing-signal parameters: amplitude a of the tip-position dither seen at
// the opposite end (u(t,0) gets a*sin(omega*t) added on top of the slow
// estimate) and dither frequency omega.
struct DitherParams {
  double a{0.2};
  double omega{5.0};
};

// Throws std::invalid_argument unless a != 0 and omega > 0 (demodulation
// divides by a and a^2; omega sets the averaging clock).
void validate(const DitherParams& p);

// Reference trajectory R(t, x) carrying the dither through the beam so that
// the uncontrolled end oscillates exactly as a*sin(omega*t):
//   R(t, x) = (a/2) * [cosh(sqrt(omega) x) + cos(sqrt(omega) x)] * sin(omega t).
// R solves the beam equation R_tt + R_xxxx = 0 with R_x = R_xxx = 0 at x = 0.
struct TrajectorySample {
  double value;  // R
  double rate;   // R_t
  double accel;  // R_tt
};
TrajectorySample eval_R(const DitherParams& p, double t, double x);

// Boundary traces of R at the actuated end x = 1:
//   S1(t) = R(t, 1)    = amp1 * sin(omega t)   (position channel)
//   S2(t) = R_xx(t, 1) = amp2 * sin(omega t)   (moment channel)
struct BoundaryDither {
  double s1;
  double s2;
};
BoundaryDither eval_S(const DitherParams& p, double t);

double dither_amp1(const DitherParams& p);  // (a/2)    (cosh sqrt(omega) + cos sqrt(omega))
double dither_amp2(const DitherParams& p);  // (a w/2) * (cosh sqrt(omega) - cos sqrt(omega))

// Demodulated measurement channels:
//   g = M(t) * y,  M(t) = (2/a) sin(omega t)        (gradient estimate)
//   h = N(t) * y,  N(t) = -(8/a^2) cos(2 omega t)   (curvature estimate)
// Averaged over one period with ideal dither tracking these give exactly
// grad and curvature of the quadratic map; see the averaging tests.
struct DemodSample {
  double g;
  double h;
};
DemodSample eval_demod(const DitherParams& p, double t, double y);

}  // namespace beamseek
