// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twostroke/circuit.hpp"

namespace twostroke {

// Undirected coupling graph of the target device.
class Topology {
 public:
  Topology(int n_qubits, std::vector<std::pair<int, int>> edges);

  int n_qubits() const { return n_qubits_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int a, int b) const;

  /// BFS shortest path (inclusive of endpoints). Throws std::runtime_error
  /// when the qubits are not connected.
  std::vector<int> shortest_path(int a, int b) const;

  /// The linear chain 0-1-...-(n-1); the C-1-2-H layout of the engine.
  static Topology line(int n_qubits);

 private:
  int n_qubits_;
  std::vector<std::pair<int, int>> edges_;
};

/// Parses "0-1 1-2 2-3" (comma or whitespace separated). Width is one past
/// the largest endpoint.
Topology parse_topology(const std::string& text);

/// ZXZXZ-family decomposition: RZ, SX, RZ, SX, RZ with degenerate cases
/// shortened (identity -> empty, diagonal -> single RZ). The returned gates
/// act on qubit 0; result equals u up to global phase.
std::vector<Gate> decompose_single_qubit(const ComplexMatrix& u);

struct RoutedCircuit {
  Circuit circuit;                    // over the physical register
  std::vector<int> final_layout;      // logical -> physical at circuit end
  std::vector<int> wire_permutation;  // content at wire p ends at wire_permutation[p]
  int swap_count = 0;
};

/// Greedy nearest-path SWAP insertion (3 CNOTs per SWAP). Logical
/// semantics are preserved up to the recorded final wire permutation.
RoutedCircuit route(const Circuit& c, const Topology& topo,
                    const std::vector<int>& initial_layout);

struct TranspiledCircuit {
  Circuit circuit;  // basis kinds {RZ, X, SX, CNOT} (+ RESET passed through)
  std::vector<int> layout;            // logical -> physical at circuit end
  std::vector<int> wire_permutation;
  int swap_count = 0;
};

/// route + basis lowering + adjacent-RZ merging. The identity layout is
/// used when `initial_layout` is empty.
TranspiledCircuit transpile(const Circuit& c, const Topology& topo,
                            const std::vector<int>& initial_layout = {});

/// Rewrites gate targets through a logical->physical map, widening the
/// register; used to compare a logical circuit against its routed form.
Circuit embed_circuit(const Circuit& c, const std::vector<int>& layout,
                      int width);

/// Unitary that moves the content of wire p to wire perm[p].
ComplexMatrix permutation_unitary(const std::vector<int>& perm);

/// Phase-invariant distance min over phi of ||U_a - e^{i phi} P~ U_b||_F,
/// where P is the recorded wire permutation of b; computed in closed form
/// from the trace. Zero iff the circuits agree up to global phase and the
/// permutation.
double verify_equivalence(const Circuit& a, const Circuit& b,
                          const std::vector<int>& permutation);

}  // namespace twostroke
