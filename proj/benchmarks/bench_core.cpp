// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "beamseek/beam.hpp"
#include "beamseek/controller.hpp"
#include "beamseek/kelvin.hpp"
#include "beamseek/kernels.hpp"

namespace {

void BM_Kelvin1(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beamseek::kelvin1(z));
  }
}
BENCHMARK(BM_Kelvin1)->Arg(3)->Arg(30)->Arg(100);

void BM_BuildKernelTable(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(beamseek::build_kernel_table(0.1, order));
  }
}
BENCHMARK(BM_BuildKernelTable)->Arg(32)->Arg(64)->Arg(128);

void BM_AssembleControl(benchmark::State& state) {
  const auto table = beamseek::build_kernel_table(0.1, static_cast<int>(state.range(0)));
  Eigen::VectorXd beta(table.size()), beta_t(table.size());
  for (int j = 0; j < table.size(); ++j) {
    beta(j) = 0.1 * j;
    beta_t(j) = -0.05 * j;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        beamseek::assemble_control(table, -0.1, beta, beta_t, 0.3, 1.1, false));
  }
}
BENCHMARK(BM_AssembleControl)->Arg(32)->Arg(64);

void BM_PlantStep(benchmark::State& state) {
  const int n_elems = static_cast<int>(state.range(0));
  beamseek::BeamPlant plant(n_elems, 1e-3);
  beamseek::BeamState s = plant.make_state(1.0, 0.0, 0.0);
  double theta1 = 1.0;
  for (auto _ : state) {
    theta1 += 1e-6;
    plant.step(s, theta1, 0.0, 0.0, 0.01);
    benchmark::DoNotOptimize(s.d.data());
  }
}
BENCHMARK(BM_PlantStep)->Arg(20)->Arg(50)->Arg(100);

void BM_Measure(benchmark::State& state) {
  const auto table = beamseek::build_kernel_table(0.1, 64);
  beamseek::BeamPlant plant(20, 1e-3);
  beamseek::FieldSampler sampler(plant, table.grid.nodes);
  const beamseek::BeamState s = plant.make_state(1.0, 0.0, 0.0);
  const beamseek::MapConfig map;
  const beamseek::DitherParams dither;
  beamseek::Measurement m;
  for (auto _ : state) {
    beamseek::measure(s, plant, map, dither, sampler, m);
    benchmark::DoNotOptimize(m.y);
  }
}
BENCHMARK(BM_Measure);

}  // namespace

BENCHMARK_MAIN();
