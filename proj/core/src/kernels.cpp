// SPDX-License-Identifier: MIT
#include "beamseek/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "beamseek/kelvin.hpp"

namespace beamseek {
namespace {

void check_kappa_args(double c, double x, double y) {
  if (!std::isfinite(c) || !std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("eval_kappa: non-finite argument");
  }
  if (c < 0.0) {
    throw std::invalid_argument("eval_kappa: c must be non-negative");
  }
  if (y < 0.0 || y > x) {
    throw std::invalid_argument("eval_kappa: need 0 <= y <= x");
  }
}

// Integrates f over [lo, hi] with the unit rule mapped affinely.
template <typename F>
double mapped_integral(const QuadratureRule& unit_rule, double lo, double hi, F&& f) {
  const double span = hi - lo;
  double acc = 0.0;
  for (int m = 0; m < unit_rule.size(); ++m) {
    acc += unit_rule.weights[m] * f(lo + span * unit_rule.nodes[m]);
  }
  return span * acc;
}

}  // namespace

double eval_gamma(double kbar) { return -kbar; }

std::complex<double> eval_q(double kbar, double x, double y) {
  return {0.0, -kbar * (x - y)};
}

std::complex<double> eval_kappa(double c, double x, double y) {
  check_kappa_args(c, x, y);
  const double delta = x * x - y * y;
  const double z = std::sqrt(c * delta);
  if (z < 1e-6) {
    // Removable-singularity branch: leading series terms of the closed form,
    // exact on the diagonal (z = 0) and for c = 0.
    const double z4 = z * z * z * z;
    const double re = (c * c / 16.0) * x * delta * (1.0 - z4 / 1152.0);
    const double im = -(c / 2.0) * x * (1.0 - z4 / 192.0);
    return {re, im};
  }
  const double amp = x * std::sqrt(c / (2.0 * delta));
  const auto [ber, bei] = kelvin1(z);
  return {amp * (-ber - bei), amp * (ber - bei)};
}

double kappa_pde_residual(double c, int n) {
  if (n < 4) {
    throw std::invalid_argument("kappa_pde_residual: grid too coarse");
  }
  const double h = 1.0 / n;
  const double inv_h2 = 1.0 / (h * h);
  double worst = 0.0;
  for (int i = 2; i < n; ++i) {
    const double x = i * h;
    for (int j = 1; j < i; ++j) {
      // Neighbours from index arithmetic: j <= i - 1 then gives y <= x on
      // every stencil point regardless of rounding in h.
      const double y = j * h;
      const std::complex<double> centre = eval_kappa(c, x, y);
      const std::complex<double> dxx =
          (eval_kappa(c, (i + 1) * h, y) - 2.0 * centre + eval_kappa(c, (i - 1) * h, y)) *
          inv_h2;
      const std::complex<double> dyy =
          (eval_kappa(c, x, (j + 1) * h) - 2.0 * centre + eval_kappa(c, x, (j - 1) * h)) *
          inv_h2;
      const double res = std::abs(dxx - dyy - std::complex<double>(0.0, c) * centre);
      worst = std::max(worst, res);
    }
  }
  return worst;
}

std::pair<double, double> p_units(double c, double x, const QuadratureRule& unit_rule) {
  if (x == 0.0) {
    return {1.0, 0.0};  // empty integrals
  }
  const double diff = mapped_integral(unit_rule, 0.0, x, [&](double y) {
    const auto k = eval_kappa(c, x, y);
    return k.real() - k.imag();
  });
  const double sum = mapped_integral(unit_rule, 0.0, x, [&](double y) {
    const auto k = eval_kappa(c, x, y);
    return k.imag() + k.real();
  });
  return {1.0 - diff, sum};
}

KernelTable build_kernel_table(double c, int quad_order) {
  if (!std::isfinite(c) || c < 0.0) {
    throw std::invalid_argument("build_kernel_table: c must be finite and non-negative");
  }
  if (quad_order < 2) {
    throw std::invalid_argument("build_kernel_table: quad_order must be at least 2");
  }

  KernelTable t;
  t.c = c;
  t.grid = gauss_legendre(quad_order);
  const QuadratureRule unit = gauss_legendre(quad_order);  // reused for inner integrals
  const int n = t.grid.size();

  t.kappa_r_1y.resize(n);
  t.kappa_i_1y.resize(n);
  t.f1_unit.resize(n);
  t.f2_unit.resize(n);
  t.q_nest_unit.resize(n);
  t.s_nest_unit.resize(n);
  for (int j = 0; j < n; ++j) {
    const double y = t.grid.nodes[j];
    const auto k = eval_kappa(c, 1.0, y);
    t.kappa_r_1y[j] = k.real();
    t.kappa_i_1y[j] = k.imag();
    t.f1_unit[j] = mapped_integral(unit, y, 1.0, [&](double s) {
      return eval_kappa(c, 1.0, s).imag() * (s - y);
    });
    t.f2_unit[j] = mapped_integral(unit, y, 1.0, [&](double s) {
      return eval_kappa(c, 1.0, s).real() * (s - y);
    });
    // The nested second moments collapse to single integrals after swapping
    // the order: int_y^1 f(s)(s - y) ds = (1/6) int_y^1 kernel(1, s)(s - y)^3 ds.
    t.q_nest_unit[j] = mapped_integral(unit, y, 1.0, [&](double s) {
      const double d = s - y;
      return eval_kappa(c, 1.0, s).imag() * d * d * d / 6.0;
    });
    t.s_nest_unit[j] = mapped_integral(unit, y, 1.0, [&](double s) {
      const double d = s - y;
      return eval_kappa(c, 1.0, s).real() * d * d * d / 6.0;
    });
  }
  t.g1_unit = t.f2_unit;  // same defining integral
  t.g2_unit = t.f1_unit;

  std::tie(t.p1_unit, t.p2_unit) = p_units(c, 1.0, unit);
  double ir = 0.0;
  double ii = 0.0;
  double if1 = 0.0;
  double if2 = 0.0;
  for (int j = 0; j < n; ++j) {
    ir += t.grid.weights[j] * t.kappa_r_1y[j];
    ii += t.grid.weights[j] * t.kappa_i_1y[j];
    if1 += t.grid.weights[j] * t.f1_unit[j];
    if2 += t.grid.weights[j] * t.f2_unit[j];
  }
  t.int_kappa_r = ir;
  t.int_kappa_i = ii;
  t.int_f1_unit = if1;
  t.int_f2_unit = if2;
  return t;
}

void write_kernel_table_csv(const KernelTable& table, std::ostream& os) {
  char buf[512];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    os << buf;
  };
  line("# c=%.17g quad_order=%d\n", table.c, table.size());
  line("# p1_unit=%.17g p2_unit=%.17g int_kappa_r=%.17g int_kappa_i=%.17g"
       " int_f1_unit=%.17g int_f2_unit=%.17g\n",
       table.p1_unit, table.p2_unit, table.int_kappa_r, table.int_kappa_i,
       table.int_f1_unit, table.int_f2_unit);
  os << "y,weight,kappa_r,kappa_i,f1_unit,f2_unit,g1_unit,g2_unit,"
        "q_nest_unit,s_nest_unit\n";
  for (int j = 0; j < table.size(); ++j) {
    line("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
         table.grid.nodes[j], table.grid.weights[j], table.kappa_r_1y[j],
         table.kappa_i_1y[j], table.f1_unit[j], table.f2_unit[j], table.g1_unit[j],
         table.g2_unit[j], table.q_nest_unit[j], table.s_nest_unit[j]);
  }
}

}  // namespace beamseek
