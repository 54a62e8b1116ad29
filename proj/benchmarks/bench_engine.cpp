// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "twostroke/engine.hpp"
#include "twostroke/vqt.hpp"

using namespace twostroke;

namespace {

EngineConfig reference_config(int cycles, ExecutionMode mode) {
  ChainSpec spec = ChainSpec::heat_engine();
  EngineConfig cfg;
  cfg.spec = spec;
  cfg.tau_q = 1.0;
  cfg.tau_w = 1.0;
  cfg.n_cycles = cycles;
  cfg.execution = mode;
  return cfg;
}

void BM_EngineCyclesExact(benchmark::State& state) {
  EngineConfig cfg = reference_config(static_cast<int>(state.range(0)),
                                      ExecutionMode::Exact);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cycles(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineCyclesExact)->Arg(10)->Arg(50);

void BM_EngineCyclesCircuit(benchmark::State& state) {
  EngineConfig cfg = reference_config(static_cast<int>(state.range(0)),
                                      ExecutionMode::Circuit);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cycles(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineCyclesCircuit)->Arg(10);

void BM_VqtLossExact(benchmark::State& state) {
  ComplexMatrix h = local_hamiltonian(0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqt_loss(0.4, {0.2, 0.5, -0.3}, h, 2.5));
  }
}
BENCHMARK(BM_VqtLossExact);

void BM_VqtOptimize(benchmark::State& state) {
  ComplexMatrix h = local_hamiltonian(0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize(h, 2.5, VqtInit{}, 200, 1e-10));
  }
}
BENCHMARK(BM_VqtOptimize);

}  // namespace
