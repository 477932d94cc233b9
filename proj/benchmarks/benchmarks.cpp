#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "squidgate/dynamics.hpp"
#include "squidgate/hilbert.hpp"
#include "squidgate/protocol.hpp"
#include "squidgate/spectrum.hpp"
#include "squidgate/units.hpp"
#include "squidgate/verify.hpp"

namespace {

using namespace squidgate;

constexpr double kG = 7.5e9;
constexpr double kRabi = 1.5e10;

SystemState photon_seed_state(int n, int n_max) {
  BasisLabel label;
  label.levels.assign(n, SquidLevel::L0);
  label.photon = 1;
  return basis_state(label, n_max);
}

std::vector<double> equal_couplings(int n) {
  return std::vector<double>(n, kG);
}

SquidParams table_squid() {
  SquidParams p;
  p.capacitance = 135e-15;
  p.inductance = 240e-12;
  p.beta_L = 1.13;
  p.flux_bias = 0.4991 * constants::phi0;
  return p;
}

void BM_JCEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemState input = photon_seed_state(n, 3);
  const JCInteraction jc{1, kG, std::numbers::pi / (2.0 * kG)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(jc_evolve(input, jc));
  }
  state.SetLabel("dim " + std::to_string(input.dim()));
}
BENCHMARK(BM_JCEvolve)->Arg(2)->Arg(4)->Arg(6);

void BM_DriveEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemState input = photon_seed_state(n, 3);
  const DrivePulse pulse{1, kRabi, -std::numbers::pi / 2.0,
                         std::numbers::pi / kRabi};
  for (auto _ : state) {
    benchmark::DoNotOptimize(drive_evolve(input, pulse));
  }
  state.SetLabel("dim " + std::to_string(input.dim()));
}
BENCHMARK(BM_DriveEvolve)->Arg(2)->Arg(4)->Arg(6);

void BM_ExtractGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Schedule schedule =
      build_cphase_schedule(n, equal_couplings(n), kRabi, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_gate(schedule, 3));
  }
}
BENCHMARK(BM_ExtractGate)->Arg(2)->Arg(3)->Arg(4);

void BM_ReferenceTrace(benchmark::State& state) {
  const Schedule schedule =
      build_cphase_schedule(3, equal_couplings(3), kRabi, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_reference_trace_all(schedule, 3));
  }
}
BENCHMARK(BM_ReferenceTrace);

void BM_SolveGrid(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const SquidParams squid = table_squid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_grid(squid, points, 1.0, 3));
  }
}
BENCHMARK(BM_SolveGrid)->Arg(512)->Arg(2048)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
