// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "twostroke/qmath.hpp"

namespace twostroke {

// Complete description of the machine: an N-site chain with local
// frequencies, nearest-neighbor hopping couplings, and one bath qubit
// attached at each end. Qubit order everywhere is (C, 1, ..., N, H),
// with index 0 the leftmost (most significant) tensor factor.
struct ChainSpec {
  int n_sites = 2;
  std::vector<double> omegas;  // site frequencies, length n_sites
  double omega_c = 0.0;        // cold-bath frequency
  double omega_h = 0.0;        // hot-bath frequency
  std::vector<double> g_work;  // internal couplings, length n_sites - 1
  double g_c = 0.0;            // chain-end coupling to the cold bath
  double g_h = 0.0;            // chain-end coupling to the hot bath
  double t_cold = 0.0;
  double t_hot = 0.0;

  int total_qubits() const { return n_sites + 2; }
  /// Throws std::invalid_argument when a field violates its constraints.
  void validate() const;

  /// The three reference operating points used throughout the tests and
  /// the bundled configs.
  static ChainSpec heat_engine();
  static ChainSpec refrigerator();
  static ChainSpec accelerator();
};

struct StrokeHamiltonians {
  ComplexMatrix h_q;                   // heat stroke, over (C, 1..N, H)
  ComplexMatrix h_w;                   // work stroke, over (1..N)
  std::vector<ComplexMatrix> h_locals; // 2x2 local terms, order (C, 1..N, H)
};

/// (omega/2) sigma_z. Throws for omega <= 0.
ComplexMatrix local_hamiltonian(double omega);

/// (g/2)(XX + YY): hopping between two qubits; annihilates |00> and |11>.
ComplexMatrix hopping_interaction(double g);

StrokeHamiltonians stroke_hamiltonians(const ChainSpec& spec);

/// Frobenius norms of [V_C, H_1 + H_C] and [V_H, H_N + H_H]. Both vanish
/// exactly when the baths are resonant with their boundary sites.
std::pair<double, double> strict_energy_conservation_residual(
    const ChainSpec& spec);

/// exp(-h/T)/Z via eigendecomposition. The result carries a single
/// subsystem of the full dimension; re-tag with with_dims if needed.
DensityMatrix gibbs_state(const ComplexMatrix& h, double temperature);

}  // namespace twostroke
