// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "beamseek/beam.hpp"
#include "beamseek/dither.hpp"
#include "beamseek/kernels.hpp"

namespace beamseek {

// Loop gains: K scales the adapted feedback gain kbar = K * Hhat, c is the
// target-system damping baked into the kernels, cbar is the corner rate of
// the first-order filters on both boundary rates.
struct EsGains {
  double K{0.1};
  double c{0.1};
  double cbar{6.0};
};
void validate(const EsGains& g);  // throws unless all three are positive

struct ControllerFlags {
  // Replace the adapted curvature estimate with the true map curvature
  // (diagnostic; isolates the adaptation loop from the regulation loop).
  bool use_true_hessian{false};
  // Flip the sign of the cross term (int_F2/phi_r)*R1 in the first boundary
  // law. The default (+) is the sign the closure derivation produces.
  bool u1_sign_variant{false};
  // Reconstruct the tip error as G / Hhat instead of -G. Exact when the
  // curvature estimate matches the true curvature, but divides by a filtered
  // quantity; kept selectable for study, default off.
  bool g_div_hhat{false};
};

// Exact zero-order-hold discretization of xdot = -rate * (x - u): subdividing
// a step commutes with taking it whole.
double lowpass_step(double state, double input, double rate, double dt);

struct RawControl {
  double U1;  // deflection-channel rate before filtering
  double U2;  // moment-channel rate before filtering
};

// Assembles the two raw boundary rates from sampled error fields:
//   U1 = int [F1 + s*(int_F2/phi_r)*R1] beta dy
//      - int [S - (int_F2/phi_r)*(1 - y - Q)] beta_t dy
//      - [p1(1) + p2(1)*(int_F2/phi_r)] * g
//   U2 = (c^2/8) beta(1) + int F1 beta dy - int F2 beta_t dy - p2(1) * g
// with all kernels evaluated at the given kbar and s = -1 when sign_variant.
// The int_F2/phi_r factor closes the elimination of the second-derivative
// boundary trace from the deflection-channel law.
//
// kbar is the positive design parameter K * |Hhat|: the field corrections add
// damping for kbar > 0 and remove it for kbar < 0 (the scalar channel's
// target pole sits at -kbar). g is the reconstructed tip displacement error;
// the caller maps the measured gradient onto it. Throws std::runtime_error
// when |phi_r(kbar)| < 1e-8.
RawControl assemble_control(const KernelTable& table, double kbar,
                            const Eigen::VectorXd& beta, const Eigen::VectorXd& beta_t,
                            double beta_at_1, double g, bool sign_variant);

// Extremum-seeking boundary controller. Owns the demodulation window, the
// slow curvature filter, the kbar update policy, the two control filters and
// the integrated boundary estimates theta1_hat / theta2_hat.
//
// Demodulation: the instantaneous products sin(wt)*y and (sin^2 - 1/2)*y
// carry harmonic ripple proportional to the full output level, not just to
// the distance from the optimum, so any constant offset in y rides into the
// channels at the dither frequency. Both channels are therefore averaged
// over a sliding window of exactly one dither period; the boxcar has exact
// zeros at every harmonic of the dither, leaving the DC terms G ~ Hhat * (Theta
// - Theta*) and Hhat. During the first window the averages are undefined and
// estimate() reports g = 0 and holds the curvature filter at its seed.
//
// kbar policy: kbar tracks K * Hhat_filt but only updates while the filtered
// curvature stays decisively negative (Hhat_filt <= -hhat_floor, floor =
// 0.05 * |initial curvature guess|); otherwise the previous kbar is held.
// This keeps the gradient-to-error mapping (which assumes a negative
// curvature) valid during transients of the slow filter and keeps the
// boundary law's design parameter K * |Hhat| bounded away from zero.
class EsController {
 public:
  // hhat0 < 0: initial curvature guess, seeds the slow filter and the floor.
  // true_H is only read when flags.use_true_hessian is set.
  EsController(const KernelTable& table, const DitherParams& dither, const EsGains& gains,
               const ControllerFlags& flags, double dt, double theta1_hat0,
               double theta2_hat0, double hhat0, double true_H);

  // Demodulates one output sample taken at time t and slides the one-period
  // averaging window; advances the slow curvature filter (time constant 10
  // dither periods) on the averaged curvature channel. Returns the averaged
  // gradient and curvature channels (G, Hhat); {0, seed} until the window
  // first fills.
  std::pair<double, double> estimate(double y, double t);

  // Raw boundary rates for the current measurement; updates kbar per policy.
  RawControl compute_U(const Measurement& m, double G);

  struct Command {
    double theta1;
    double theta2;
    double theta1_t;
    double theta1_tt;
  };

  // Filters the raw rates, advances the boundary estimates by one step and
  // returns the actuated boundary values at t_next (estimates plus dither).
  // theta1_t is the exact boundary rate (filtered rate plus analytic dither
  // rate); theta1_tt combines the backward difference of the filtered rate
  // with the analytic dither acceleration.
  Command integrate_controls(const RawControl& raw, double t_next);

  double theta1_hat() const { return theta1_hat_; }
  double theta2_hat() const { return theta2_hat_; }
  double hhat_filt() const { return hhat_filt_; }
  double kbar() const { return kbar_; }
  double u1() const { return u1_; }
  double u2() const { return u2_; }

 private:
  const KernelTable* table_;
  DitherParams dither_;
  EsGains gains_;
  ControllerFlags flags_;
  double dt_;
  double true_H_;
  // One-dither-period sliding windows over the two demodulation channels.
  // Running sums give O(1) updates; each wrap recomputes the sums from the
  // ring so rounding error cannot accumulate over long runs.
  std::vector<double> g_ring_;
  std::vector<double> h_ring_;
  int ring_len_;
  int ring_pos_{0};
  long ring_count_{0};
  double g_sum_{0.0};
  double h_sum_{0.0};
  double hhat_filt_;
  double hhat_floor_;
  double hhat_rate_;  // 1 / (10 dither periods)
  double kbar_;
  double theta1_hat_;
  double theta2_hat_;
  double u1_{0.0};
  double u2_{0.0};
  double u1_prev_{0.0};
};

}  // namespace beamseek
