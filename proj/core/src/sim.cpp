// SPDX-License-Identifier: MIT
#include "beamseek/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "beamseek/kernels.hpp"
#include "beamseek/quadrature.hpp"
#include "beamseek/spectrum.hpp"

namespace beamseek {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + value);
  }
  if (used != value.size()) {
    throw std::invalid_argument("config: trailing junk for '" + key + "': " + value);
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  const int i = static_cast<int>(d);
  if (d != i) {
    throw std::invalid_argument("config: expected integer for '" + key + "': " + value);
  }
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") {
    return true;
  }
  if (value == "false" || value == "0") {
    return false;
  }
  throw std::invalid_argument("config: expected bool for '" + key + "': " + value);
}

}  // namespace

SimConfig parse_config(std::istream& in) {
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    }

    if (key == "H") {
      cfg.map.H = parse_double(key, value);
    } else if (key == "Theta_star") {
      cfg.map.theta_star = parse_double(key, value);
    } else if (key == "y_star") {
      cfg.map.y_star = parse_double(key, value);
    } else if (key == "a") {
      cfg.dither.a = parse_double(key, value);
    } else if (key == "omega") {
      cfg.dither.omega = parse_double(key, value);
    } else if (key == "K") {
      cfg.gains.K = parse_double(key, value);
    } else if (key == "c") {
      cfg.gains.c = parse_double(key, value);
    } else if (key == "cbar") {
      cfg.gains.cbar = parse_double(key, value);
    } else if (key == "n_elems") {
      cfg.n_elems = parse_int(key, value);
    } else if (key == "dt") {
      cfg.dt = parse_double(key, value);
    } else if (key == "t_end") {
      cfg.t_end = parse_double(key, value);
    } else if (key == "quad_order") {
      cfg.quad_order = parse_int(key, value);
    } else if (key == "theta1_hat0") {
      cfg.theta1_hat0 = parse_double(key, value);
    } else if (key == "theta2_hat0") {
      cfg.theta2_hat0 = parse_double(key, value);
    } else if (key == "hhat0") {
      cfg.hhat0 = parse_double(key, value);
    } else if (key == "use_true_hessian") {
      cfg.flags.use_true_hessian = parse_bool(key, value);
    } else if (key == "u1_sign_variant") {
      cfg.flags.u1_sign_variant = parse_bool(key, value);
    } else if (key == "g_div_hhat") {
      cfg.flags.g_div_hhat = parse_bool(key, value);
    } else if (key == "dissipation") {
      cfg.dissipation = parse_double(key, value);
    } else if (key == "decimation") {
      cfg.decimation = parse_int(key, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }

  validate(cfg.map);
  validate(cfg.dither);
  validate(cfg.gains);
  if (cfg.n_elems < 2) {
    throw std::invalid_argument("config: n_elems must be at least 2");
  }
  if (cfg.quad_order < 2) {
    throw std::invalid_argument("config: quad_order must be at least 2");
  }
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw std::invalid_argument("config: t_end must be positive");
  }
  if (cfg.dt < 0.0 || !std::isfinite(cfg.dt)) {
    throw std::invalid_argument("config: dt must be positive (or 0 for auto)");
  }
  if (cfg.decimation < 1) {
    throw std::invalid_argument("config: decimation must be at least 1");
  }
  if (!(cfg.dissipation >= 0.0) || !(cfg.dissipation <= 1.0)) {
    throw std::invalid_argument("config: dissipation must lie in [0, 1]");
  }
  if (cfg.hhat0 > 0.0 || !std::isfinite(cfg.hhat0)) {
    throw std::invalid_argument("config: hhat0 must be negative (or 0 for the startup rule)");
  }
  if (!std::isfinite(cfg.theta1_hat0) || !std::isfinite(cfg.theta2_hat0)) {
    throw std::invalid_argument("config: non-finite initial boundary estimate");
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  return parse_config(in);
}

double resolved_dt(const SimConfig& cfg) {
  return cfg.dt > 0.0 ? cfg.dt : kTwoPi / cfg.dither.omega / 1000.0;
}

double resolved_hhat0(const SimConfig& cfg) {
  if (cfg.hhat0 < 0.0) {
    return cfg.hhat0;
  }
  // Raw startup rule: demodulate the very first output sample. Clamp to the
  // negative side; the sample itself has no sign guarantee.
  const double dev = cfg.theta1_hat0 - cfg.map.theta_star;
  const double y0 = cfg.map.y_star + 0.5 * cfg.map.H * dev * dev;
  const double h0 = -(8.0 / (cfg.dither.a * cfg.dither.a)) * y0;
  return h0 < 0.0 ? h0 : -1.0;
}

namespace {

void write_timeseries_header(std::FILE* f) {
  std::fputs("t,Theta,y,theta1,theta2,U1,U2,G,Hhat\n", f);
}

struct WindowStats {
  double t_start{0.0};
  double sum_theta{0.0};
  double sum_y{0.0};
  double max_theta1{0.0};
  long count{0};

  void add(double t, double theta_err, double y_err, double theta1_err) {
    if (t >= t_start - 1e-12) {
      sum_theta += theta_err;
      sum_y += y_err;
      max_theta1 = std::max(max_theta1, theta1_err);
      ++count;
    }
  }
};

}  // namespace

RunSummary run(const SimConfig& cfg) {
  const auto wall_start = std::chrono::steady_clock::now();
  const double dt = resolved_dt(cfg);
  const double hhat0 = resolved_hhat0(cfg);
  const long n_steps = std::lround(cfg.t_end / dt);
  if (n_steps < 1) {
    throw std::invalid_argument("run: t_end shorter than one step");
  }

  const KernelTable table = build_kernel_table(cfg.gains.c, cfg.quad_order);
  BeamPlant plant(cfg.n_elems, dt, cfg.dissipation);
  FieldSampler sampler(plant, table.grid.nodes);
  EsController ctl(table, cfg.dither, cfg.gains, cfg.flags, dt, cfg.theta1_hat0,
                   cfg.theta2_hat0, hhat0, cfg.map.H);
  BeamState state = plant.make_state(cfg.theta1_hat0, 0.0, 0.0);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string ts_path = cfg.out_dir + "/timeseries.csv";
  const std::string snap_path = cfg.out_dir + "/snapshots.csv";
  std::FILE* ts = std::fopen(ts_path.c_str(), "w");
  std::FILE* snap = std::fopen(snap_path.c_str(), "w");
  if (!ts || !snap) {
    if (ts) std::fclose(ts);
    if (snap) std::fclose(snap);
    throw std::runtime_error("run: cannot open output files in " + cfg.out_dir);
  }
  write_timeseries_header(ts);
  std::fputs("t", snap);
  for (int i = 0; i <= cfg.n_elems; ++i) {
    std::fprintf(snap, ",u_x%.4f", static_cast<double>(i) / cfg.n_elems);
  }
  std::fputs("\n", snap);

  const double window = 5.0 * kTwoPi / cfg.dither.omega;
  WindowStats stats;
  stats.t_start = n_steps * dt - window;

  Measurement m;
  EsController::Command cmd{};
  {
    const BoundaryDither s0 = eval_S(cfg.dither, 0.0);
    cmd.theta1 = cfg.theta1_hat0 + s0.s1;
    cmd.theta2 = cfg.theta2_hat0 + s0.s2;
    cmd.theta1_t = dither_amp1(cfg.dither) * cfg.dither.omega;
    cmd.theta1_tt = -cfg.dither.omega * cfg.dither.omega * s0.s1;
  }
  // The boundary starts moving at the dither rate; the rest state does not.
  state.v(2 * cfg.n_elems) = cmd.theta1_t;

  double last_exit = 0.0;
  long next_snap = 0;
  RunSummary out;
  for (long n = 0;; ++n) {
    const double t = state.t;
    measure(state, plant, cfg.map, cfg.dither, sampler, m);
    const auto [g_inst, h_inst] = ctl.estimate(m.y, t);
    (void)h_inst;

    if (n % cfg.decimation == 0 || n == n_steps) {
      std::fprintf(ts, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t,
                   m.Theta, m.y, cmd.theta1, cmd.theta2, ctl.u1(), ctl.u2(), g_inst,
                   ctl.hhat_filt());
    }
    if (99 * n >= next_snap * n_steps) {  // 100 evenly spaced rows from 0 to t_end
      std::fprintf(snap, "%.17g", t);
      for (int i = 0; i <= cfg.n_elems; ++i) {
        std::fprintf(snap, ",%.17g", state.d(2 * i));
      }
      std::fputs("\n", snap);
      ++next_snap;
    }

    stats.add(t, std::fabs(m.Theta - cfg.map.theta_star), std::fabs(m.y - cfg.map.y_star),
              std::fabs(cmd.theta1 - cfg.map.theta_star));
    if (std::fabs(ctl.theta1_hat() - cfg.map.theta_star) > 0.3) {
      last_exit = t;
    }

    if (n == n_steps) {
      break;
    }
    const RawControl raw = ctl.compute_U(m, g_inst);
    cmd = ctl.integrate_controls(raw, t + dt);
    plant.step(state, cmd.theta1, cmd.theta1_t, cmd.theta1_tt, cmd.theta2);
  }
  std::fclose(ts);
  std::fclose(snap);

  out.final_Theta_err = stats.count ? stats.sum_theta / stats.count : 0.0;
  out.final_y_err = stats.count ? stats.sum_y / stats.count : 0.0;
  out.final_theta1_err = stats.max_theta1;
  out.settle_time = last_exit;
  out.settled = last_exit <= stats.t_start + 1e-12;
  out.final_theta1_hat = ctl.theta1_hat();
  out.final_hhat_filt = ctl.hhat_filt();
  out.steps = n_steps;
  out.dt = dt;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  std::ofstream sum(cfg.out_dir + "/summary.txt");
  if (!sum) {
    throw std::runtime_error("run: cannot write summary.txt");
  }
  write_summary(cfg, out, sum);
  return out;
}

void write_summary(const SimConfig& cfg, const RunSummary& s, std::ostream& os) {
  char buf[256];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    os << buf;
  };
  line("H = %.17g\n", cfg.map.H);
  line("Theta_star = %.17g\n", cfg.map.theta_star);
  line("y_star = %.17g\n", cfg.map.y_star);
  line("a = %.17g\n", cfg.dither.a);
  line("omega = %.17g\n", cfg.dither.omega);
  line("K = %.17g\n", cfg.gains.K);
  line("c = %.17g\n", cfg.gains.c);
  line("cbar = %.17g\n", cfg.gains.cbar);
  line("n_elems = %d\n", cfg.n_elems);
  line("dt = %.17g\n", s.dt);
  line("t_end = %.17g\n", cfg.t_end);
  line("quad_order = %d\n", cfg.quad_order);
  line("theta1_hat0 = %.17g\n", cfg.theta1_hat0);
  line("theta2_hat0 = %.17g\n", cfg.theta2_hat0);
  line("hhat0 = %.17g\n", resolved_hhat0(cfg));
  line("use_true_hessian = %d\n", cfg.flags.use_true_hessian ? 1 : 0);
  line("u1_sign_variant = %d\n", cfg.flags.u1_sign_variant ? 1 : 0);
  line("g_div_hhat = %d\n", cfg.flags.g_div_hhat ? 1 : 0);
  line("dissipation = %.17g\n", cfg.dissipation);
  line("decimation = %d\n", cfg.decimation);
  os << "\n";
  line("steps = %ld\n", s.steps);
  line("final_Theta_err = %.17g\n", s.final_Theta_err);
  line("final_y_err = %.17g\n", s.final_y_err);
  line("final_theta1_err = %.17g\n", s.final_theta1_err);
  line("settled = %d\n", s.settled ? 1 : 0);
  line("settle_time = %.17g\n", s.settle_time);
  line("final_theta1_hat = %.17g\n", s.final_theta1_hat);
  line("final_hhat_filt = %.17g\n", s.final_hhat_filt);
  line("wall_seconds = %.3f\n", s.wall_seconds);
}

namespace {

struct Checker {
  std::ostream& os;
  bool ok{true};

  void check(bool pass, const std::string& label, const std::string& detail) {
    os << (pass ? "[PASS] " : "[FAIL] ") << label << ": " << detail << "\n";
    ok = ok && pass;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool validate_kernels(std::ostream& os) {
  Checker ck{os};
  const double c = 0.1;
  const double r32 = kappa_pde_residual(c, 32);
  const double r64 = kappa_pde_residual(c, 64);
  const double r128 = kappa_pde_residual(c, 128);
  const double ord1 = std::log2(r32 / r64);
  const double ord2 = std::log2(r64 / r128);
  ck.check(ord1 > 1.8 && ord1 < 2.2 && ord2 > 1.8 && ord2 < 2.2, "kappa pde residual",
           fmt("orders %.3f, %.3f (residuals %.3e / %.3e / %.3e)", ord1, ord2, r32, r64,
               r128));

  double diag = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double x = i / 10.0;
    diag = std::max(diag, std::abs(eval_kappa(c, x, x) -
                                   std::complex<double>(0.0, -0.5 * c * x)));
  }
  ck.check(diag <= 1e-9, "kappa diagonal", fmt("max |kappa(x,x) + i c x/2| = %.3e", diag));

  const KernelTable t64 = build_kernel_table(c, 64);
  const KernelTable t128 = build_kernel_table(c, 128);
  // Entries live on different grids; compare the grid-free scalars.
  double drift = std::fabs(t64.p1_unit - t128.p1_unit);
  drift = std::max(drift, std::fabs(t64.p2_unit - t128.p2_unit));
  drift = std::max(drift, std::fabs(t64.int_kappa_r - t128.int_kappa_r));
  drift = std::max(drift, std::fabs(t64.int_f1_unit - t128.int_f1_unit));
  ck.check(drift <= 1e-10, "quadrature stability",
           fmt("max scalar drift doubling the order = %.3e", drift));
  return ck.ok;
}

bool validate_spectrum(std::ostream& os) {
  Checker ck{os};
  SpectrumConfig cfg;
  const SpectrumReport rep = target_spectrum(cfg);
  print_spectrum(rep, os);
  ck.check(rep.modes[0].abs_err <= 1e-6, "adaptation mode",
           fmt("|computed - (-kbar)| = %.3e", rep.modes[0].abs_err));
  bool pairs_ok = true;
  std::string detail;
  for (int k = 1; k <= cfg.n_modes; ++k) {
    const auto& mm = rep.modes[k];
    const double im_rel =
        std::fabs(mm.computed.imag() - mm.predicted.imag()) / mm.predicted.imag();
    const double re_abs = std::fabs(mm.computed.real() - mm.predicted.real());
    pairs_ok = pairs_ok && mm.matched && im_rel <= 0.01 && re_abs <= 0.02;
    detail += fmt("%sim_rel %.2e re_abs %.2e", k > 1 ? "; " : "", im_rel, re_abs);
  }
  ck.check(pairs_ok, "beam mode pairs", detail);
  return ck.ok;
}

bool validate_fem(std::ostream& os) {
  Checker ck{os};
  const double target = std::pow(std::numbers::pi / 2.0, 2);
  const double w1 = lowest_eigenfrequency(100);
  ck.check(std::fabs(w1 - target) / target <= 1e-3, "lowest eigenfrequency",
           fmt("w1 = %.9f vs pi^2/4 = %.9f (rel err %.2e)", w1, target,
               std::fabs(w1 - target) / target));

  // Free vibration: deflect into cos(pi x / 2), release, watch the energy.
  const int n_elems = 16;
  const double period = kTwoPi / target;
  const double dt = period / 500.0;
  BeamPlant plant(n_elems, dt);
  BeamState s = plant.make_state(0.0, 0.0, 0.0);
  for (int i = 0; i <= n_elems; ++i) {
    const double x = static_cast<double>(i) / n_elems;
    s.d(2 * i) = std::cos(std::numbers::pi * x / 2.0);
    s.d(2 * i + 1) = -std::numbers::pi / 2.0 * std::sin(std::numbers::pi * x / 2.0);
  }
  plant.reset_accelerations(s, 0.0, 0.0);
  const double e0 = plant.energy(s);
  double drift = 0.0;
  const long steps = std::lround(10.0 * period / dt);
  for (long n = 0; n < steps; ++n) {
    plant.step(s, 0.0, 0.0, 0.0, 0.0);
    drift = std::max(drift, std::fabs(plant.energy(s) - e0));
  }
  ck.check(drift / e0 <= 1e-9, "energy conservation",
           fmt("rel drift %.3e over 10 periods", drift / e0));
  return ck.ok;
}

bool validate_averaging(std::ostream& os) {
  Checker ck{os};
  const MapConfig map;
  const DitherParams p;
  const double period = kTwoPi / p.omega;
  const QuadratureRule rule = gauss_legendre(64, 0.0, period);
  bool all_ok = true;
  std::string detail;
  for (const double theta_hat : {1.0, 1.5, 2.0}) {
    const double vth = theta_hat - map.theta_star;
    double g_avg = 0.0;
    double h_avg = 0.0;
    for (int j = 0; j < rule.size(); ++j) {
      const double t = rule.nodes[j];
      const double theta = theta_hat + p.a * std::sin(p.omega * t);
      const double dev = theta - map.theta_star;
      const double y = map.y_star + 0.5 * map.H * dev * dev;
      const DemodSample d = eval_demod(p, t, y);
      g_avg += rule.weights[j] * d.g;
      h_avg += rule.weights[j] * d.h;
    }
    g_avg /= period;
    h_avg /= period;
    const double g_err = std::fabs(g_avg - map.H * vth);
    const double h_err = std::fabs(h_avg - map.H);
    all_ok = all_ok && g_err <= 1e-8 && h_err <= 1e-8;
    detail += fmt("%stheta_hat %.1f: g_err %.1e h_err %.1e", detail.empty() ? "" : "; ",
                  theta_hat, g_err, h_err);
  }
  ck.check(all_ok, "one-period demodulation identities", detail);
  return ck.ok;
}

}  // namespace

bool run_validation(const std::string& kind, std::ostream& os) {
  if (kind == "kernels") {
    return validate_kernels(os);
  }
  if (kind == "spectrum") {
    return validate_spectrum(os);
  }
  if (kind == "fem") {
    return validate_fem(os);
  }
  if (kind == "averaging") {
    return validate_averaging(os);
  }
  throw std::invalid_argument("validate: unknown kind '" + kind +
                              "' (expected kernels|spectrum|fem|averaging)");
}

}  // namespace beamseek
