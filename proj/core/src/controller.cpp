// SPDX-License-Identifier: MIT
#include "beamseek/controller.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace beamseek {

void validate(const EsGains& g) {
  if (!(g.K > 0.0) || !(g.c > 0.0) || !(g.cbar > 0.0) || !std::isfinite(g.K) ||
      !std::isfinite(g.c) || !std::isfinite(g.cbar)) {
    throw std::invalid_argument("gains: K, c and cbar must all be positive");
  }
}

double lowpass_step(double state, double input, double rate, double dt) {
  const double decay = std::exp(-rate * dt);
  return decay * state + (1.0 - decay) * input;
}

RawControl assemble_control(const KernelTable& table, double kbar,
                            const Eigen::VectorXd& beta, const Eigen::VectorXd& beta_t,
                            double beta_at_1, double g, bool sign_variant) {
  const double phi_r = table.phi_r(kbar);
  if (std::fabs(phi_r) < 1e-8) {
    throw std::runtime_error("assemble_control: phi_r vanished, kernel closure singular");
  }
  const double phi2_ratio = table.int_F2(kbar) / phi_r;
  const double sgn = sign_variant ? -1.0 : 1.0;

  double u1_beta = 0.0;
  double u1_beta_t = 0.0;
  double u2_beta = 0.0;
  double u2_beta_t = 0.0;
  for (int j = 0; j < table.size(); ++j) {
    const double w = table.grid.weights[j];
    const double y = table.grid.nodes[j];
    const double f1 = table.F1(kbar, j);
    const double f2 = table.F2(kbar, j);
    u1_beta += w * (f1 + sgn * phi2_ratio * table.R1(kbar, j)) * beta(j);
    u1_beta_t +=
        w * (table.S(kbar, j) - phi2_ratio * (1.0 - y - table.Q(kbar, j))) * beta_t(j);
    u2_beta += w * f1 * beta(j);
    u2_beta_t += w * f2 * beta_t(j);
  }
  const double u1_gain = table.p1_tip(kbar) + table.p2_tip(kbar) * phi2_ratio;

  RawControl out;
  out.U1 = u1_beta - u1_beta_t - u1_gain * g;
  out.U2 = (table.c * table.c / 8.0) * beta_at_1 + u2_beta - u2_beta_t -
           table.p2_tip(kbar) * g;
  return out;
}

EsController::EsController(const KernelTable& table, const DitherParams& dither,
                           const EsGains& gains, const ControllerFlags& flags, double dt,
                           double theta1_hat0, double theta2_hat0, double hhat0,
                           double true_H)
    : table_(&table),
      dither_(dither),
      gains_(gains),
      flags_(flags),
      dt_(dt),
      true_H_(true_H),
      theta1_hat_(theta1_hat0),
      theta2_hat_(theta2_hat0) {
  validate(dither_);
  validate(gains_);
  if (!(dt > 0.0)) {
    throw std::invalid_argument("controller: dt must be positive");
  }
  if (!std::isfinite(hhat0) || hhat0 >= 0.0) {
    throw std::invalid_argument("controller: initial curvature guess must be negative");
  }
  hhat_filt_ = hhat0;
  hhat_floor_ = 0.05 * std::fabs(hhat0);
  hhat_rate_ = dither_.omega / (10.0 * 2.0 * std::numbers::pi);
  kbar_ = gains_.K * (flags_.use_true_hessian ? true_H_ : hhat0);
  const double period = 2.0 * std::numbers::pi / dither_.omega;
  ring_len_ = static_cast<int>(std::max(1L, std::lround(period / dt)));
  g_ring_.assign(static_cast<size_t>(ring_len_), 0.0);
  h_ring_.assign(static_cast<size_t>(ring_len_), 0.0);
}

std::pair<double, double> EsController::estimate(double y, double t) {
  const DemodSample d = eval_demod(dither_, t, y);
  g_sum_ += d.g - g_ring_[static_cast<size_t>(ring_pos_)];
  h_sum_ += d.h - h_ring_[static_cast<size_t>(ring_pos_)];
  g_ring_[static_cast<size_t>(ring_pos_)] = d.g;
  h_ring_[static_cast<size_t>(ring_pos_)] = d.h;
  ++ring_count_;
  if (++ring_pos_ == ring_len_) {
    ring_pos_ = 0;
    g_sum_ = std::accumulate(g_ring_.begin(), g_ring_.end(), 0.0);
    h_sum_ = std::accumulate(h_ring_.begin(), h_ring_.end(), 0.0);
  }
  if (ring_count_ < ring_len_) {
    // Window not yet full; hold the filter at its current value.
    return {0.0, hhat_filt_};
  }
  const double g_ma = g_sum_ / ring_len_;
  const double h_ma = h_sum_ / ring_len_;
  hhat_filt_ = lowpass_step(hhat_filt_, h_ma, hhat_rate_, dt_);
  return {g_ma, h_ma};
}

RawControl EsController::compute_U(const Measurement& m, double G) {
  if (flags_.use_true_hessian) {
    kbar_ = gains_.K * true_H_;
  } else if (hhat_filt_ <= -hhat_floor_) {
    kbar_ = gains_.K * hhat_filt_;
  }  // else: hold the previous kbar
  const double hhat_used = kbar_ / gains_.K;
  // The boundary law wants the design parameter K*|Hhat| and the tip
  // displacement error; the measured gradient approximates Hhat times that
  // error, and Hhat is negative, so the literal wiring negates G.  The
  // divided wiring reconstructs the error exactly as G / Hhat.
  const double g_signal = flags_.g_div_hhat ? G / hhat_used : -G;
  return assemble_control(*table_, std::fabs(kbar_), m.beta, m.beta_t, m.beta_at_1,
                          g_signal, flags_.u1_sign_variant);
}

EsController::Command EsController::integrate_controls(const RawControl& raw, double t_next) {
  u1_prev_ = u1_;
  u1_ = lowpass_step(u1_, raw.U1, gains_.cbar, dt_);
  u2_ = lowpass_step(u2_, raw.U2, gains_.cbar, dt_);
  theta1_hat_ += dt_ * u1_;
  theta2_hat_ += dt_ * u2_;

  const BoundaryDither s = eval_S(dither_, t_next);
  Command cmd;
  cmd.theta1 = theta1_hat_ + s.s1;
  cmd.theta2 = theta2_hat_ + s.s2;
  cmd.theta1_t =
      u1_ + dither_amp1(dither_) * dither_.omega * std::cos(dither_.omega * t_next);
  cmd.theta1_tt = (u1_ - u1_prev_) / dt_ - dither_.omega * dither_.omega * s.s1;
  return cmd;
}

}  // namespace beamseek
