// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "beamseek/dither.hpp"

namespace beamseek {

// Euler-Bernoulli beam on x in [0, 1] with unit density and bending
// stiffness, discretized with cubic Hermite elements (two DOFs per node:
// deflection w_i and rotation w_x|_i, ordered [w_0, r_0, w_1, r_1, ...]).
//
// Boundary conditions of the plant:
//   x = 0: sliding support, w_x = 0 (essential), shear-free (natural)
//   x = 1: prescribed deflection theta1 (essential) and applied moment
//          theta2 (natural, enters the load at the tip rotation DOF)

struct BeamMatrices {
  Eigen::MatrixXd M;  // consistent mass
  Eigen::MatrixXd K;  // bending stiffness
};

// Full (unconstrained) matrices for n_elems equal elements.
// Throws std::invalid_argument for n_elems < 2.
BeamMatrices assemble_fem(int n_elems);

struct BeamState {
  double t{0.0};
  Eigen::VectorXd d;  // displacements
  Eigen::VectorXd v;  // velocities
  Eigen::VectorXd a;  // accelerations
};

// Quadratic static output map read at the uncontrolled end Theta = u(t, 0):
//   y = y_star + (H/2) * (Theta - theta_star)^2, maximum H < 0.
struct MapConfig {
  double H{-1.0};
  double theta_star{1.5};
  double y_star{2.4};
};
void validate(const MapConfig& m);  // throws unless H < 0 and finite

// Time stepper: Newmark family with gamma = 1/2 + hf_dissipation and
// beta = (gamma + 1/2)^2 / 4 (unconditionally stable), essential DOFs carried
// along analytically. The step(...) inputs are values at the end of the step;
// the tip deflection, rate and acceleration equal the commanded traces after
// every step by construction. Integrating the tip rate from the commanded
// acceleration instead would leave it a neutral state: any initial mismatch
// with the true boundary rate would sit in the measured error field forever.
//
// hf_dissipation = 0 is the average-acceleration rule, exactly
// energy-conserving for the free beam. Positive values damp only the mesh
// modes near the sampling rate (amplitude error scales with (w dt)^2, so
// resolved frequencies are untouched); feedback through sampled
// accelerations destabilizes those unresolved modes otherwise.
class BeamPlant {
 public:
  // Factorizes the free-free Newmark operator once. dt > 0 required,
  // hf_dissipation in [0, 1].
  BeamPlant(int n_elems, double dt, double hf_dissipation = 0.0);

  int n_elems() const { return n_elems_; }
  int n_dofs() const { return 2 * (n_elems_ + 1); }
  double dt() const { return dt_; }
  const BeamMatrices& matrices() const { return mats_; }

  // Rest state with uniform deflection (a rigid translation, so it is
  // stress-free) and consistent initial accelerations for the given inputs.
  BeamState make_state(double uniform_deflection, double theta1_tt0, double theta2_0) const;

  // Advances one step of size dt to the given end-of-step inputs.
  void step(BeamState& s, double theta1, double theta1_t, double theta1_tt,
            double theta2) const;

  // Recomputes accelerations consistent with the current displacements and
  // the given inputs: M a = F(theta2) - K d on the free DOFs.
  void reset_accelerations(BeamState& s, double theta1_tt, double theta2) const;

  // Hermite interpolation of any DOF vector (d, v or a) at position x.
  double sample(const Eigen::VectorXd& dofs, double x) const;

  // 0.5 v'Mv + 0.5 d'Kd, conserved by the free beam.
  double energy(const BeamState& s) const;

 private:
  int n_elems_;
  double dt_;
  double gamma_;   // 1/2 + hf_dissipation
  double beta_n_;  // (gamma + 1/2)^2 / 4
  BeamMatrices mats_;
  std::vector<int> free_;          // free DOF indices
  int dof_tip_w_;                  // constrained: deflection at x = 1
  int dof_root_r_;                 // constrained: rotation at x = 0
  int dof_tip_r_free_;             // position of the tip rotation DOF inside free_
  Eigen::MatrixXd k_ff_, m_ff_;
  Eigen::VectorXd k_fc_w_, m_fc_w_;  // coupling columns of the tip deflection DOF
  Eigen::LLT<Eigen::MatrixXd> newmark_llt_;  // M_ff + beta_n dt^2 K_ff
  Eigen::LLT<Eigen::MatrixXd> mass_llt_;     // M_ff
};

// Lowest bending eigenfrequency of the constrained beam (sliding root,
// held tip), i.e. sqrt of the smallest generalized eigenvalue of (K, M).
// Converges to (pi/2)^2 as the mesh refines.
double lowest_eigenfrequency(int n_elems);

// Interpolates beam fields at a fixed set of stations with one precomputed
// dense operator (row i = Hermite shape functions at stations[i]).
class FieldSampler {
 public:
  FieldSampler(const BeamPlant& plant, std::vector<double> stations);
  const std::vector<double>& stations() const { return stations_; }
  // out = P * dofs; out is resized on first use.
  void apply(const Eigen::VectorXd& dofs, Eigen::VectorXd& out) const;

 private:
  std::vector<double> stations_;
  Eigen::MatrixXd P_;
};

// One controller-facing measurement: the scalar output y read at x = 0 plus
// the tracking-error fields beta = u_t - R_t and beta_t = u_tt - R_tt
// sampled at the stations of the given sampler.
struct Measurement {
  double Theta{0.0};
  double y{0.0};
  Eigen::VectorXd beta;
  Eigen::VectorXd beta_t;
  double beta_at_1{0.0};
};

void measure(const BeamState& s, const BeamPlant& plant, const MapConfig& map,
             const DitherParams& dither, const FieldSampler& sampler, Measurement& out);

}  // namespace beamseek
