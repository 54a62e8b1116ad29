// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "twostroke/circuit.hpp"
#include "twostroke/model.hpp"
#include "twostroke/qmath.hpp"

using namespace twostroke;

namespace {

DensityMatrix four_qubit_state() {
  ChainSpec spec = ChainSpec::heat_engine();
  DensityMatrix cold = gibbs_state(local_hamiltonian(spec.omega_c), spec.t_cold);
  DensityMatrix hot = gibbs_state(local_hamiltonian(spec.omega_h), spec.t_hot);
  DensityMatrix chain = DensityMatrix::basis({2, 2}, 3);
  return tensor(tensor(cold, chain), hot).with_dims({2, 2, 2, 2});
}

void BM_Kron4x4(benchmark::State& state) {
  ComplexMatrix a = hopping_interaction(0.8);
  ComplexMatrix b = identity(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron(a, b));
  }
}
BENCHMARK(BM_Kron4x4);

void BM_PartialTraceChain(benchmark::State& state) {
  DensityMatrix rho = four_qubit_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(rho, {1, 2}));
  }
}
BENCHMARK(BM_PartialTraceChain);

void BM_HermPropagator16(benchmark::State& state) {
  StrokeHamiltonians h = stroke_hamiltonians(ChainSpec::heat_engine());
  for (auto _ : state) {
    benchmark::DoNotOptimize(herm_propagator(h.h_q, 1.0));
  }
}
BENCHMARK(BM_HermPropagator16);

void BM_TraceDistance16(benchmark::State& state) {
  DensityMatrix a = four_qubit_state();
  DensityMatrix b = DensityMatrix::maximally_mixed({2, 2, 2, 2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_distance(a, b));
  }
}
BENCHMARK(BM_TraceDistance16);

void BM_ApplyHeatStrokeCircuit(benchmark::State& state) {
  Circuit circuit = build_heat_stroke_circuit(ChainSpec::heat_engine(), 1.0);
  DensityMatrix rho = four_qubit_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_circuit(rho, circuit));
  }
}
BENCHMARK(BM_ApplyHeatStrokeCircuit);

}  // namespace
