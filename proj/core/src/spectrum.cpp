// SPDX-License-Identifier: MIT
#include "beamseek/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "beamseek/beam.hpp"

namespace beamseek {

SpectrumReport target_spectrum(const SpectrumConfig& cfg) {
  if (cfg.n_modes < 1) {
    throw std::invalid_argument("target_spectrum: n_modes must be positive");
  }
  if (cfg.n_elems < 8 * cfg.n_modes) {
    throw std::invalid_argument("target_spectrum: need n_elems >= 8*n_modes");
  }
  if (!(cfg.c >= 0.0)) {
    throw std::invalid_argument("target_spectrum: c must be non-negative");
  }

  const BeamMatrices mats = assemble_fem(cfg.n_elems);
  const int nd = 2 * (cfg.n_elems + 1);
  std::vector<int> free;
  for (int g = 0; g < nd; ++g) {
    if (g != 2 * cfg.n_elems && g != 1) {
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

  // First-order operator on [theta; zeta; zeta_t]. The mass is inverted into
  // the acceleration block (LLT, M is SPD), giving a standard eigenproblem:
  //   theta'  = -kbar theta + c zeta(0) + zeta_t(0)
  //   zeta'   = zeta_t
  //   zeta_t' = -(M^-1 K + c^2 I) zeta - 2 c zeta_t
  Eigen::LLT<Eigen::MatrixXd> mass_llt(mf);
  if (mass_llt.info() != Eigen::Success) {
    throw std::runtime_error("target_spectrum: mass factorization failed");
  }
  const Eigen::MatrixXd minv_k = mass_llt.solve(kf);

  // Scale the velocity states by sigma ~ sqrt(||M^-1 K||). A similarity
  // transform, so the spectrum is untouched, but it balances the two field
  // blocks: unbalanced, the QR iteration loses the top conjugate pairs to
  // the real axis once the stiffness norm reaches ~1e12 (fine meshes), and
  // those artifacts then masquerade as small-|Im| modes.
  const double sigma = std::sqrt(minv_k.cwiseAbs().rowwise().sum().maxCoeff());

  const int n = 2 * nf + 1;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n, n);
  int root_w_free = -1;  // free index of the deflection DOF at x = 0
  for (int i = 0; i < nf; ++i) {
    if (free[i] == 0) {
      root_w_free = i;
    }
  }
  sys(0, 0) = -cfg.kbar;
  sys(0, 1 + root_w_free) = cfg.c;
  sys(0, 1 + nf + root_w_free) = sigma;
  for (int i = 0; i < nf; ++i) {
    sys(1 + i, 1 + nf + i) = sigma;
    for (int j = 0; j < nf; ++j) {
      sys(1 + nf + i, 1 + j) = -minv_k(i, j) / sigma;
    }
    sys(1 + nf + i, 1 + i) += -cfg.c * cfg.c / sigma;
    sys(1 + nf + i, 1 + nf + i) = -2.0 * cfg.c;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(sys, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("target_spectrum: eigen solve failed");
  }
  std::vector<std::complex<double>> eig(es.eigenvalues().data(),
                                        es.eigenvalues().data() + n);
  std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
    if (std::fabs(a.imag()) != std::fabs(b.imag())) {
      return std::fabs(a.imag()) < std::fabs(b.imag());
    }
    return a.real() < b.real();
  });
  const int keep = std::min<int>(2 * cfg.n_modes + 1, n);
  eig.resize(keep);

  // Predictions, upper half plane only.
  std::vector<std::complex<double>> pred;
  pred.emplace_back(-cfg.kbar, 0.0);
  const double pi = std::numbers::pi;
  for (int m = 0; m < cfg.n_modes; ++m) {
    const double wm = std::pow((2.0 * m + 1.0) * pi / 2.0, 2);
    pred.emplace_back(-cfg.c, wm);
  }

  SpectrumReport report;
  report.config = cfg;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    // Rejection radius: 10% of the gap to the nearest other prediction.
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < pred.size(); ++l) {
      if (l != k) {
        gap = std::min(gap, std::abs(pred[l] - pred[k]));
      }
    }
    const double radius = 0.1 * gap;

    ModeMatch mm;
    mm.predicted = pred[k];
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ev : eig) {
      // Compare against the upper-half-plane representative.
      const std::complex<double> cand(ev.real(), std::fabs(ev.imag()));
      const double dist = std::abs(cand - pred[k]);
      if (dist < best) {
        best = dist;
        mm.computed = cand;
      }
    }
    mm.abs_err = best;
    mm.rel_err = best / std::max(std::abs(pred[k]), 1e-300);
    mm.matched = best <= radius;
    if (mm.matched) {
      ++report.n_matched;
      report.max_rel_err = std::max(report.max_rel_err, mm.rel_err);
    }
    report.modes.push_back(mm);
  }
  return report;
}

void print_spectrum(const SpectrumReport& report, std::ostream& os) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "target spectrum: c=%g kbar=%g n_elems=%d\n",
                report.config.c, report.config.kbar, report.config.n_elems);
  os << buf;
  os << "  mode             predicted                computed       abs_err   rel_err\n";
  for (std::size_t k = 0; k < report.modes.size(); ++k) {
    const auto& m = report.modes[k];
    std::snprintf(buf, sizeof buf,
                  "  %4zu  %11.6f %+11.6fi  %11.6f %+11.6fi  %8.2e  %8.2e %s\n", k,
                  m.predicted.real(), m.predicted.imag(), m.computed.real(),
                  m.computed.imag(), m.abs_err, m.rel_err,
                  m.matched ? "" : "(unmatched)");
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "  matched %d of %zu, max rel err %.3e\n",
                report.n_matched, report.modes.size(), report.max_rel_err);
  os << buf;
}

void write_spectrum_csv(const SpectrumReport& report, std::ostream& os) {
  os << "mode,re_predicted,im_predicted,re_computed,im_computed,abs_err,rel_err,matched\n";
  char buf[256];
  for (std::size_t k = 0; k < report.modes.size(); ++k) {
    const auto& m = report.modes[k];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", k,
                  m.predicted.real(), m.predicted.imag(), m.computed.real(),
                  m.computed.imag(), m.abs_err, m.rel_err, m.matched ? 1 : 0);
    os << buf;
  }
}

}  // namespace beamseek
