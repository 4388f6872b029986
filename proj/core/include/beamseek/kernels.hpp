// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "beamseek/quadrature.hpp"

namespace beamseek {

// Backstepping kernels for the boundary-controlled beam, written in the
// complex Schrodinger variable v = beta_t - i*beta_xx on x in [0, 1].
//
// First transform (state feedback gain kbar folds the tip measurement back):
//   gamma(x) = -kbar,  q(x, y) = -i*kbar*(x - y).
//
// Second transform kernel kappa(x, y) on the wedge 0 <= y <= x solves
//   kappa_xx - kappa_yy = i*c*kappa,
//   kappa_y(x, 0) = 0,  kappa(x, x) = -i*(c/2)*x,
// with the closed form (z = sqrt(c*(x^2 - y^2)))
//   kappa = x * sqrt(c / (2*(x^2 - y^2))) *
//           [(-ber1(z) - bei1(z)) + i*(ber1(z) - bei1(z))].
// kappa is entire in x^2 - y^2, so the apparent diagonal singularity is
// removable; a series branch takes over for z below 1e-6.

double eval_gamma(double kbar);
std::complex<double> eval_q(double kbar, double x, double y);

// Throws std::invalid_argument outside { c >= 0, 0 <= y <= x, all finite }.
std::complex<double> eval_kappa(double c, double x, double y);

// Max centred finite-difference residual of the kappa PDE on the interior of
// the triangular grid with spacing 1/n (x = 2/n .. 1-1/n, h <= y <= x - h).
// Decays at second order in the spacing; used as an independent check that
// the closed form actually solves the PDE.
double kappa_pde_residual(double c, int n);

// Unit-gain tip coefficients (p1(x)/kbar, p2(x)/kbar):
//   p1(x)/kbar = 1 - int_0^x (kappa_r - kappa_i)(x, y) dy
//   p2(x)/kbar =     int_0^x (kappa_i + kappa_r)(x, y) dy
// unit_rule is any rule on [0, 1]; it is mapped onto [0, x].
std::pair<double, double> p_units(double c, double x, const QuadratureRule& unit_rule);

// Sampled control kernels at the tip x = 1.
//
// Everything downstream of kappa is affine in kbar, so the table stores the
// kbar-independent pieces once and assembles values for any kbar exactly
// (the scaling never re-enters a quadrature):
//   f1_unit(y) = int_y^1 kappa_i(1, s) * (s - y) ds
//   f2_unit(y) = int_y^1 kappa_r(1, s) * (s - y) ds
//   g1_unit = f2_unit,  g2_unit = f1_unit   (same defining integrals)
//   q_nest_unit(y) = int_y^1 f1_unit(s) * (s - y) ds
//                  = (1/6) int_y^1 kappa_i(1, s) * (s - y)^3 ds
//   s_nest_unit(y) = int_y^1 f2_unit(s) * (s - y) ds
//                  = (1/6) int_y^1 kappa_r(1, s) * (s - y)^3 ds
// Inner integrals run on the same-order Gauss-Legendre rule mapped to
// [y_j, 1]; all integrands are analytic, so the fixed rule is converged to
// machine precision (doubling the order moves no entry by more than 1e-10).
struct KernelTable {
  double c{0.0};
  QuadratureRule grid;  // on [0, 1]

  std::vector<double> kappa_r_1y;  // kappa_r(1, y_j)
  std::vector<double> kappa_i_1y;  // kappa_i(1, y_j)
  std::vector<double> f1_unit;
  std::vector<double> f2_unit;
  std::vector<double> g1_unit;
  std::vector<double> g2_unit;
  std::vector<double> q_nest_unit;
  std::vector<double> s_nest_unit;

  double p1_unit{1.0};     // p1(1)/kbar
  double p2_unit{0.0};     // p2(1)/kbar
  double int_kappa_r{0.0};  // int_0^1 kappa_r(1, y) dy
  double int_kappa_i{0.0};  // int_0^1 kappa_i(1, y) dy
  double int_f1_unit{0.0};  // int_0^1 f1_unit(y) dy
  double int_f2_unit{0.0};  // int_0^1 f2_unit(y) dy

  int size() const { return grid.size(); }

  // Control kernels at node j for feedback gain kbar:
  //   F1 = kappa_r - kbar*f1_unit
  //   F2 = kappa_i + kbar*(f2_unit - (1 - y))
  //   R1 = kbar*((1 - y) - g1_unit) - kappa_i   (== -F2)
  //   R2 = kappa_r - kbar*g2_unit               (==  F1)
  //   Q  = f2_unit - kbar*q_nest_unit           (int_y^1 R2(1,s)(s-y) ds)
  //   S  = f1_unit + kbar*(s_nest_unit - (1-y)^3/6)
  //                                             (int_y^1 F2(1,s)(s-y) ds)
  double F1(double kbar, int j) const { return kappa_r_1y[j] - kbar * f1_unit[j]; }
  double F2(double kbar, int j) const {
    return kappa_i_1y[j] + kbar * (f2_unit[j] - (1.0 - grid.nodes[j]));
  }
  double R1(double kbar, int j) const {
    return kbar * ((1.0 - grid.nodes[j]) - g1_unit[j]) - kappa_i_1y[j];
  }
  double R2(double kbar, int j) const { return kappa_r_1y[j] - kbar * g2_unit[j]; }
  double Q(double kbar, int j) const { return f2_unit[j] - kbar * q_nest_unit[j]; }
  double S(double kbar, int j) const {
    const double d = 1.0 - grid.nodes[j];
    return f1_unit[j] + kbar * (s_nest_unit[j] - d * d * d / 6.0);
  }

  // int_0^1 R2(1, y) dy / int_0^1 F2(1, y) dy, and the closure scalars.
  double int_R2(double kbar) const { return int_kappa_r - kbar * int_f1_unit; }
  double int_F2(double kbar) const { return int_kappa_i + kbar * (int_f2_unit - 0.5); }
  double phi_r(double kbar) const { return 1.0 - int_R2(kbar); }

  double p1_tip(double kbar) const { return kbar * p1_unit; }
  double p2_tip(double kbar) const { return kbar * p2_unit; }
};

// Builds the table at domain coefficient c on a quad_order-point rule.
// Throws std::invalid_argument for c < 0 or quad_order < 2.
KernelTable build_kernel_table(double c, int quad_order);

// One row per quadrature node: y, weight, raw and iterated kernels. Scalars
// ride along as comment lines. Values print with 17 significant digits.
void write_kernel_table_csv(const KernelTable& table, std::ostream& os);

}  // namespace beamseek
