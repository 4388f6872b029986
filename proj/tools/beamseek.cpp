// SPDX-License-Identifier: MIT
//
// Command line front end: closed-loop runs, property validation suites and
// spectrum / kernel-table inspection.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "beamseek/kernels.hpp"
#include "beamseek/sim.hpp"
#include "beamseek/spectrum.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override) {
  beamseek::SimConfig cfg = beamseek::load_config(config_path);
  if (!out_override.empty()) {
    cfg.out_dir = out_override;
  }
  const beamseek::RunSummary summary = beamseek::run(cfg);
  beamseek::write_summary(cfg, summary, std::cout);
  return 0;
}

int cmd_validate(const std::string& kind) {
  return beamseek::run_validation(kind, std::cout) ? 0 : 1;
}

int cmd_spectrum(const beamseek::SpectrumConfig& cfg, const std::string& csv_path) {
  const beamseek::SpectrumReport report = beamseek::target_spectrum(cfg);
  beamseek::print_spectrum(report, std::cout);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) {
      std::cerr << "cannot write " << csv_path << "\n";
      return 1;
    }
    beamseek::write_spectrum_csv(report, out);
  }
  return 0;
}

int cmd_table(double c, int quad_order, const std::string& out_path) {
  const beamseek::KernelTable table = beamseek::build_kernel_table(c, quad_order);
  if (out_path.empty() || out_path == "-") {
    beamseek::write_kernel_table_csv(table, std::cout);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  beamseek::write_kernel_table_csv(table, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremum-seeking boundary control of a flexible beam"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  auto* run = app.add_subcommand("run", "run the closed loop from a config file");
  run->add_option("--config", config_path, "key = value configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_override, "output directory (overrides out_dir)");

  std::string kind;
  auto* validate = app.add_subcommand("validate", "run a property suite");
  validate->add_option("kind", kind, "kernels | spectrum | fem | averaging")->required();

  beamseek::SpectrumConfig scfg;
  std::string spectrum_csv;
  auto* spectrum = app.add_subcommand("spectrum", "closed-loop spectrum vs predictions");
  spectrum->add_option("--c", scfg.c, "target damping");
  spectrum->add_option("--kbar", scfg.kbar, "feedback gain");
  spectrum->add_option("--elems", scfg.n_elems, "mesh elements");
  spectrum->add_option("--modes", scfg.n_modes, "conjugate pairs to match");
  spectrum->add_option("--csv", spectrum_csv, "also write the report as CSV");

  double table_c = 0.1;
  int table_quad = 64;
  std::string table_out;
  auto* table = app.add_subcommand("table", "dump the sampled kernel table as CSV");
  table->add_option("--c", table_c, "target damping");
  table->add_option("--quad", table_quad, "quadrature order");
  table->add_option("--out", table_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_override);
    }
    if (validate->parsed()) {
      return cmd_validate(kind);
    }
    if (spectrum->parsed()) {
      return cmd_spectrum(scfg, spectrum_csv);
    }
    if (table->parsed()) {
      return cmd_table(table_c, table_quad, table_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
