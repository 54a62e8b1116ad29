// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twostroke/model.hpp"
#include "twostroke/qmath.hpp"

namespace twostroke {

enum class GateKind {
  Rz,
  Rx,
  Ry,
  X,
  SqrtX,
  H,
  S,
  Sdg,
  Cnot,
  Reset,
  Barrier,
};

const char* gate_kind_name(GateKind kind);
bool gate_kind_has_angle(GateKind kind);
bool gate_kind_is_two_qubit(GateKind kind);

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;       // second qubit for CNOT (control = q0, target = q1)
  double angle = 0;  // radians, rotation gates only
};

// Ordered gate list over `width` qubits. Qubit 0 is the leftmost (most
// significant) tensor factor, matching the (C, 1, ..., N, H) register order.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int width);

  int width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  bool has_reset() const;

  /// Validates targets and angle finiteness; throws std::invalid_argument.
  void add(Gate gate);

  Circuit& rz(int q, double angle);
  Circuit& rx(int q, double angle);
  Circuit& ry(int q, double angle);
  Circuit& x(int q);
  Circuit& sx(int q);
  Circuit& h(int q);
  Circuit& s(int q);
  Circuit& sdg(int q);
  Circuit& cnot(int control, int target);
  Circuit& reset(int q);
  Circuit& barrier();

 private:
  int width_ = 0;
  std::vector<Gate> gates_;
};

/// 2x2 (or 4x4 for CNOT) unitary of a single gate. Throws for RESET/BARRIER.
ComplexMatrix gate_matrix(const Gate& gate);

/// Gate unitary embedded into a width-qubit register at arbitrary targets.
ComplexMatrix embed_gate(const ComplexMatrix& u, const std::vector<int>& targets,
                         int width);

/// Runs the circuit on a state: U rho U~ for unitary gates; RESET is the
/// trace-preserving measure-and-flip channel; BARRIER is a no-op.
DensityMatrix apply_circuit(const DensityMatrix& rho, const Circuit& c);

/// Ordered product of the gate unitaries. Throws if a RESET is present.
ComplexMatrix circuit_unitary(const Circuit& c);

/// Heat-stroke circuit over (C, 1..N, H): a local Rz layer with angles
/// omega_s * tau_q, then the XX and YY hopping factors on the two
/// boundary pairs, each lowered to a basis-changed CNOT-Rz-CNOT block.
/// Equals exp(-i h_q tau_q) exactly when the baths are resonant.
Circuit build_heat_stroke_circuit(const ChainSpec& spec, double tau_q);

/// Work-stroke circuit over the chain qubits: local Rz layer, then XX and
/// YY factors on each nearest-neighbor pair (single Trotter step).
Circuit build_work_stroke_circuit(const ChainSpec& spec, double tau_w);

struct ShotEstimate {
  double mean = 0;       // estimated <sigma_z>, in [-1, 1]
  double std_error = 0;  // 2 sqrt(p(1-p)/shots)
  int shots = 0;
  std::uint64_t seed = 0;
};

/// Exact <sigma_z> of one qubit of a qubit-register state.
double sigma_z_expectation(const DensityMatrix& rho, int qubit);

/// Bernoulli sampling of the qubit's z-basis populations; deterministic
/// for a fixed seed.
ShotEstimate sample_sigma_z(const DensityMatrix& rho, int qubit, int shots,
                            std::uint64_t seed);

// Line-oriented text format: one gate per line, `GATE q0 [q1] [angle]`.
// `#` starts a comment; the writer emits a `# qubits: N` hint that the
// reader honors when present.
void write_circuit(const Circuit& c, std::ostream& out);
std::string circuit_to_string(const Circuit& c);
Circuit read_circuit(std::istream& in);
Circuit circuit_from_string(const std::string& text);

}  // namespace twostroke
