// SPDX-License-Identifier: MIT
//
// Test-side quadrature oracle: adaptive Gauss-Kronrod 7-15 bisection.
// Deliberately independent of the library's fixed Gauss-Legendre rules so
// that agreement between the two is evidence, not tautology.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace detail {

// Kronrod-15 abscissae on [0, 1] side (symmetric) and weights; every second
// abscissa starting at index 1 is a Gauss-7 point.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& integral, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) {
      resg += kWg[(j - 1) / 2] * (f1 + f2);
    }
  }
  integral = resk * half;
  err = std::fabs((resk - resg) * half);
}

template <typename F>
double adapt(const F& f, double a, double b, double tol, int depth) {
  double integral = 0.0;
  double err = 0.0;
  gk15(f, a, b, integral, err);
  if (err <= tol || b - a <= 1e-14 * (std::fabs(a) + 1.0)) {
    return integral;
  }
  if (depth > 60) {
    throw std::runtime_error("oracle quadrature failed to converge");
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Absolute-tolerance adaptive integral of f over [a, b].
template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-12) {
  if (!(a <= b)) {
    throw std::invalid_argument("oracle::integrate: need a <= b");
  }
  if (a == b) {
    return 0.0;
  }
  return detail::adapt(f, a, b, tol, 0);
}

// Same, but split at the given interior breakpoints first (for integrands
// that are smooth between but not across them).
template <typename F>
double integrate_piecewise(const F& f, double a, double b, const std::vector<double>& breaks,
                           double tol = 1e-12) {
  double acc = 0.0;
  double lo = a;
  const double per = tol / (breaks.size() + 1);
  for (const double brk : breaks) {
    if (brk > lo && brk < b) {
      acc += integrate(f, lo, brk, per);
      lo = brk;
    }
  }
  acc += integrate(f, lo, b, per);
  return acc;
}

}  // namespace oracle
