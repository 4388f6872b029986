// SPDX-License-Identifier: MIT
#include "beamseek/beam.hpp"

#include <cmath>
#include <stdexcept>

namespace beamseek {
namespace {

// Cubic Hermite shape functions on the element containing x; writes the four
// global DOF indices and shape values.
void hermite_row(int n_elems, double x, int dofs[4], double vals[4]) {
  const double h = 1.0 / n_elems;
  int e = static_cast<int>(x * n_elems);
  e = std::max(0, std::min(e, n_elems - 1));
  const double xi = (x - e * h) / h;
  const double xi2 = xi * xi;
  const double xi3 = xi2 * xi;
  dofs[0] = 2 * e;
  dofs[1] = 2 * e + 1;
  dofs[2] = 2 * e + 2;
  dofs[3] = 2 * e + 3;
  vals[0] = 1.0 - 3.0 * xi2 + 2.0 * xi3;
  vals[1] = h * (xi - 2.0 * xi2 + xi3);
  vals[2] = 3.0 * xi2 - 2.0 * xi3;
  vals[3] = h * (xi3 - xi2);
}

}  // namespace

BeamMatrices assemble_fem(int n_elems) {
  if (n_elems < 2) {
    throw std::invalid_argument("assemble_fem: need at least two elements");
  }
  const int nd = 2 * (n_elems + 1);
  const double h = 1.0 / n_elems;
  const double h2 = h * h;

  Eigen::Matrix4d ke;
  ke << 12.0, 6.0 * h, -12.0, 6.0 * h,
        6.0 * h, 4.0 * h2, -6.0 * h, 2.0 * h2,
        -12.0, -6.0 * h, 12.0, -6.0 * h,
        6.0 * h, 2.0 * h2, -6.0 * h, 4.0 * h2;
  ke /= h * h2;

  Eigen::Matrix4d me;
  me << 156.0, 22.0 * h, 54.0, -13.0 * h,
        22.0 * h, 4.0 * h2, 13.0 * h, -3.0 * h2,
        54.0, 13.0 * h, 156.0, -22.0 * h,
        -13.0 * h, -3.0 * h2, -22.0 * h, 4.0 * h2;
  me *= h / 420.0;

  BeamMatrices out;
  out.M = Eigen::MatrixXd::Zero(nd, nd);
  out.K = Eigen::MatrixXd::Zero(nd, nd);
  for (int e = 0; e < n_elems; ++e) {
    const int base = 2 * e;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        out.M(base + i, base + j) += me(i, j);
        out.K(base + i, base + j) += ke(i, j);
      }
    }
  }
  return out;
}

void validate(const MapConfig& m) {
  if (!std::isfinite(m.H) || m.H >= 0.0) {
    throw std::invalid_argument("map: H must be finite and negative (maximum seeking)");
  }
  if (!std::isfinite(m.theta_star) || !std::isfinite(m.y_star)) {
    throw std::invalid_argument("map: non-finite extremum location");
  }
}

BeamPlant::BeamPlant(int n_elems, double dt, double hf_dissipation)
    : n_elems_(n_elems), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("BeamPlant: dt must be positive");
  }
  if (!(hf_dissipation >= 0.0) || !(hf_dissipation <= 1.0)) {
    throw std::invalid_argument("BeamPlant: hf_dissipation must lie in [0, 1]");
  }
  gamma_ = 0.5 + hf_dissipation;
  beta_n_ = (gamma_ + 0.5) * (gamma_ + 0.5) / 4.0;
  mats_ = assemble_fem(n_elems);
  const int nd = n_dofs();
  dof_tip_w_ = 2 * n_elems_;
  dof_root_r_ = 1;

  free_.reserve(nd - 2);
  for (int g = 0; g < nd; ++g) {
    if (g != dof_tip_w_ && g != dof_root_r_) {
      free_.push_back(g);
    }
  }
  const int nf = static_cast<int>(free_.size());
  k_ff_.resize(nf, nf);
  m_ff_.resize(nf, nf);
  k_fc_w_.resize(nf);
  m_fc_w_.resize(nf);
  dof_tip_r_free_ = -1;
  for (int i = 0; i < nf; ++i) {
    if (free_[i] == 2 * n_elems_ + 1) {
      dof_tip_r_free_ = i;
    }
    k_fc_w_(i) = mats_.K(free_[i], dof_tip_w_);
    m_fc_w_(i) = mats_.M(free_[i], dof_tip_w_);
    for (int j = 0; j < nf; ++j) {
      k_ff_(i, j) = mats_.K(free_[i], free_[j]);
      m_ff_(i, j) = mats_.M(free_[i], free_[j]);
    }
  }

  newmark_llt_.compute(m_ff_ + (beta_n_ * dt_ * dt_) * k_ff_);
  mass_llt_.compute(m_ff_);
  if (newmark_llt_.info() != Eigen::Success || mass_llt_.info() != Eigen::Success) {
    throw std::runtime_error("BeamPlant: factorization failed");
  }
}

BeamState BeamPlant::make_state(double uniform_deflection, double theta1_tt0,
                                double theta2_0) const {
  const int nd = n_dofs();
  BeamState s;
  s.t = 0.0;
  s.d = Eigen::VectorXd::Zero(nd);
  s.v = Eigen::VectorXd::Zero(nd);
  s.a = Eigen::VectorXd::Zero(nd);
  for (int node = 0; node <= n_elems_; ++node) {
    s.d(2 * node) = uniform_deflection;
  }
  reset_accelerations(s, theta1_tt0, theta2_0);
  return s;
}

void BeamPlant::reset_accelerations(BeamState& s, double theta1_tt, double theta2) const {
  const int nf = static_cast<int>(free_.size());
  // M_ff a_f = F_f - (K d)_f - M_fc a_c, with a_c = theta1_tt at the tip.
  Eigen::VectorXd rhs(nf);
  for (int i = 0; i < nf; ++i) {
    rhs(i) = -mats_.K.row(free_[i]).dot(s.d) - m_fc_w_(i) * theta1_tt;
  }
  rhs(dof_tip_r_free_) += theta2;
  const Eigen::VectorXd a_f = mass_llt_.solve(rhs);
  for (int i = 0; i < nf; ++i) {
    s.a(free_[i]) = a_f(i);
  }
  s.a(dof_tip_w_) = theta1_tt;
  s.a(dof_root_r_) = 0.0;
}

void BeamPlant::step(BeamState& s, double theta1, double theta1_t, double theta1_tt,
                     double theta2) const {
  const int nf = static_cast<int>(free_.size());
  const double qd = (0.5 - beta_n_) * dt_ * dt_;
  const double qn = beta_n_ * dt_ * dt_;

  Eigen::VectorXd dp(nf);
  for (int i = 0; i < nf; ++i) {
    const int g = free_[i];
    dp(i) = s.d(g) + dt_ * s.v(g) + qd * s.a(g);
  }
  Eigen::VectorXd rhs = -(k_ff_ * dp) - theta1 * k_fc_w_ - theta1_tt * m_fc_w_;
  rhs(dof_tip_r_free_) += theta2;
  const Eigen::VectorXd a_new = newmark_llt_.solve(rhs);

  for (int i = 0; i < nf; ++i) {
    const int g = free_[i];
    s.d(g) = dp(i) + qn * a_new(i);
    s.v(g) += dt_ * ((1.0 - gamma_) * s.a(g) + gamma_ * a_new(i));
    s.a(g) = a_new(i);
  }
  s.d(dof_tip_w_) = theta1;
  s.v(dof_tip_w_) = theta1_t;
  s.a(dof_tip_w_) = theta1_tt;
  s.t += dt_;
}

double BeamPlant::sample(const Eigen::VectorXd& dofs, double x) const {
  int idx[4];
  double sh[4];
  hermite_row(n_elems_, x, idx, sh);
  return sh[0] * dofs(idx[0]) + sh[1] * dofs(idx[1]) + sh[2] * dofs(idx[2]) +
         sh[3] * dofs(idx[3]);
}

double BeamPlant::energy(const BeamState& s) const {
  return 0.5 * (s.v.dot(mats_.M * s.v) + s.d.dot(mats_.K * s.d));
}

double lowest_eigenfrequency(int n_elems) {
  const BeamMatrices mats = assemble_fem(n_elems);
  const int nd = 2 * (n_elems + 1);
  std::vector<int> free;
  for (int g = 0; g < nd; ++g) {
    if (g != 2 * n_elems && g != 1) {
      free.push_back(g);
    }
  }
  const int nf = static_cast<int>(free.size());
  Eigen::MatrixXd kf(nf, nf);
  Eigen::MatrixXd mf(nf, nf);
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nf; ++j) {
      kf(i, j) = mats.K(free[i], free[j]);
      mf(i, j) = mats.M(free[i], free[j]);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(kf, mf);
  if (ges.info() != Eigen::Success) {
    throw std::runtime_error("lowest_eigenfrequency: eigen solve failed");
  }
  return std::sqrt(ges.eigenvalues()(0));
}

FieldSampler::FieldSampler(const BeamPlant& plant, std::vector<double> stations)
    : stations_(std::move(stations)) {
  const int rows = static_cast<int>(stations_.size());
  P_ = Eigen::MatrixXd::Zero(rows, plant.n_dofs());
  for (int i = 0; i < rows; ++i) {
    int idx[4];
    double sh[4];
    hermite_row(plant.n_elems(), stations_[i], idx, sh);
    for (int k = 0; k < 4; ++k) {
      P_(i, idx[k]) = sh[k];
    }
  }
}

void FieldSampler::apply(const Eigen::VectorXd& dofs, Eigen::VectorXd& out) const {
  out.noalias() = P_ * dofs;
}

void measure(const BeamState& s, const BeamPlant& plant, const MapConfig& map,
             const DitherParams& dither, const FieldSampler& sampler, Measurement& out) {
  out.Theta = s.d(0);
  const double dev = out.Theta - map.theta_star;
  out.y = map.y_star + 0.5 * map.H * dev * dev;

  sampler.apply(s.v, out.beta);
  sampler.apply(s.a, out.beta_t);
  for (int j = 0; j < static_cast<int>(sampler.stations().size()); ++j) {
    const TrajectorySample r = eval_R(dither, s.t, sampler.stations()[j]);
    out.beta(j) -= r.rate;
    out.beta_t(j) -= r.accel;
  }
  out.beta_at_1 = s.v(2 * plant.n_elems()) - eval_R(dither, s.t, 1.0).rate;
}

}  // namespace beamseek
