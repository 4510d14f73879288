#include <benchmark/benchmark.h>

#include <cstdint>

#include "dpsim/classical.hpp"
#include "dpsim/metrics.hpp"
#include "dpsim/process.hpp"
#include "dpsim/quantum.hpp"

namespace {

const dpsim::ProcessParams kBase{12.0, 1.0, 0.9, 0.1};

dpsim::DiscreteParams params_at(double dt) {
  return dpsim::discretize({kBase.gamma1, kBase.gamma2, kBase.p, dt});
}

void BM_Survival(benchmark::State& state) {
  const dpsim::DiscreteParams dp = params_at(0.1);
  std::int64_t n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::survival(dp, n % 64));
    ++n;
  }
}
BENCHMARK(BM_Survival);

void BM_BuildMachine(benchmark::State& state) {
  const double dt = 0.2 / static_cast<double>(state.range(0));
  const dpsim::DiscreteParams dp = params_at(dt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::build_machine(dp, 0.01));
  }
  state.SetLabel("dt=0.2/" + std::to_string(state.range(0)));
}
BENCHMARK(BM_BuildMachine)->Arg(1)->Arg(16)->Arg(256)->Arg(1024);

void BM_StatComplexityExact(benchmark::State& state) {
  const double dt = 0.2 / static_cast<double>(state.range(0));
  const dpsim::DiscreteParams dp = params_at(dt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::stat_complexity_exact(dp));
  }
}
BENCHMARK(BM_StatComplexityExact)->Arg(1)->Arg(256)->Arg(1024);

void BM_SimulateClassical(benchmark::State& state) {
  const dpsim::TruncatedEpsilonMachine machine =
      dpsim::build_machine(params_at(0.1), 0.01);
  const std::int64_t steps = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::simulate(machine, 0, steps, seed++));
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_SimulateClassical)->Arg(100000);

void BM_SimulateQuantum(benchmark::State& state) {
  const dpsim::QuantumModel model = dpsim::QuantumModel::build(params_at(0.1));
  const dpsim::SimBackend backend = state.range(1) == 0
                                        ? dpsim::SimBackend::kraus
                                        : dpsim::SimBackend::full_unitary;
  const std::int64_t steps = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::simulate(model, 0, steps, seed++, backend));
  }
  state.SetItemsProcessed(state.iterations() * steps);
  state.SetLabel(state.range(1) == 0 ? "kraus" : "full_unitary");
}
BENCHMARK(BM_SimulateQuantum)->Args({100000, 0})->Args({100000, 1});

void BM_QuantumSurvival(benchmark::State& state) {
  const dpsim::QuantumModel model = dpsim::QuantumModel::build(params_at(0.1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::quantum_survival(model, state.range(0)));
  }
}
BENCHMARK(BM_QuantumSurvival)->Arg(28)->Arg(128);

void BM_DensityClosed(benchmark::State& state) {
  const dpsim::DiscreteParams dp = params_at(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::density_matrix(dp));
  }
}
BENCHMARK(BM_DensityClosed);

void BM_DensityDirect(benchmark::State& state) {
  const dpsim::DiscreteParams dp = params_at(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::density_matrix_direct(dp));
  }
}
BENCHMARK(BM_DensityDirect);

void BM_ContinuumCell(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpsim::continuum_metrics(100.0, 0.9));
  }
}
BENCHMARK(BM_ContinuumCell);

}  // namespace

BENCHMARK_MAIN();
