// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace twostroke {

namespace {

constexpr double kAngleEps = 1e-12;

double reduce_angle(double a) {
  a = std::fmod(a, 2 * M_PI);
  if (a > M_PI) a -= 2 * M_PI;
  if (a <= -M_PI) a += 2 * M_PI;
  return a;
}

}  // namespace

Topology::Topology(int n_qubits, std::vector<std::pair<int, int>> edges)
    : n_qubits_(n_qubits), edges_(std::move(edges)) {
  if (n_qubits_ < 1) throw std::invalid_argument("topology needs >= 1 qubit");
  for (auto& [a, b] : edges_) {
    if (a == b) throw std::invalid_argument("topology self-loop");
    if (a < 0 || b < 0 || a >= n_qubits_ || b >= n_qubits_) {
      throw std::invalid_argument("topology edge endpoint out of range");
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Topology::adjacent(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
}

std::vector<int> Topology::shortest_path(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_qubits_ || b >= n_qubits_) {
    throw std::invalid_argument("path endpoint out of range");
  }
  std::vector<int> prev(n_qubits_, -1);
  std::deque<int> queue{a};
  prev[a] = a;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    if (cur == b) break;
    for (const auto& [x, y] : edges_) {
      int next = -1;
      if (x == cur) next = y;
      if (y == cur) next = x;
      if (next >= 0 && prev[next] < 0) {
        prev[next] = cur;
        queue.push_back(next);
      }
    }
  }
  if (prev[b] < 0) {
    throw std::runtime_error("topology does not connect qubits " +
                             std::to_string(a) + " and " + std::to_string(b));
  }
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

Topology Topology::line(int n_qubits) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n_qubits; ++i) edges.emplace_back(i, i + 1);
  return Topology(n_qubits, std::move(edges));
}

Topology parse_topology(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::string token;
  std::vector<std::pair<int, int>> edges;
  int max_q = 0;
  while (in >> token) {
    auto dash = token.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= token.size()) {
      throw std::invalid_argument("bad topology edge '" + token + "'");
    }
    int a = 0, b = 0;
    try {
      a = std::stoi(token.substr(0, dash));
      b = std::stoi(token.substr(dash + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad topology edge '" + token + "'");
    }
    if (a < 0 || b < 0) {
      throw std::invalid_argument("bad topology edge '" + token + "'");
    }
    edges.emplace_back(a, b);
    max_q = std::max({max_q, a, b});
  }
  if (edges.empty()) throw std::invalid_argument("empty topology");
  return Topology(max_q + 1, std::move(edges));
}

std::vector<Gate> decompose_single_qubit(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-10)) {
    throw std::invalid_argument("decomposition requires a 2x2 unitary");
  }
  ComplexMatrix su = u / std::sqrt(u.determinant());

  std::vector<Gate> out;
  auto push_rz = [&out](double angle) {
    angle = reduce_angle(angle);
    if (std::abs(angle) > kAngleEps) {
      out.push_back({GateKind::Rz, 0, -1, angle});
    }
  };

  double theta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
  if (std::abs(su(1, 0)) < 1e-9) {
    // Diagonal: a single z-rotation (or nothing).
    push_rz(-2.0 * std::arg(su(0, 0)));
    return out;
  }

  double phi = 0.0, lambda = 0.0;
  if (std::abs(su(0, 0)) < 1e-9) {
    // Gimbal case theta = pi: only phi - lambda matters, so zero lambda
    // and let the middle rotation collapse to RZ(2 pi).
    phi = 2.0 * std::arg(su(1, 0));
  } else {
    double sum = -2.0 * std::arg(su(0, 0));
    double diff = 2.0 * std::arg(su(1, 0));
    phi = 0.5 * (sum + diff);
    lambda = 0.5 * (sum - diff);
  }

  // U ~ RZ(phi - pi) SX RZ(theta + pi) SX RZ(lambda), from
  // Rx(pi/2) Rz(theta + pi) Rx(pi/2) = Rz(pi) Ry(theta).
  push_rz(lambda);
  out.push_back({GateKind::SqrtX, 0, -1, 0});
  push_rz(theta + M_PI);
  out.push_back({GateKind::SqrtX, 0, -1, 0});
  push_rz(phi - M_PI);
  return out;
}

RoutedCircuit route(const Circuit& c, const Topology& topo,
                    const std::vector<int>& initial_layout) {
  const int n_phys = topo.n_qubits();
  if (static_cast<int>(initial_layout.size()) != c.width()) {
    throw std::invalid_argument("layout size must match circuit width");
  }
  std::vector<int> phys_to_logical(n_phys, -1);
  for (int l = 0; l < c.width(); ++l) {
    int p = initial_layout[l];
    if (p < 0 || p >= n_phys || phys_to_logical[p] >= 0) {
      throw std::invalid_argument("layout must be injective into the topology");
    }
    phys_to_logical[p] = l;
  }

  std::vector<int> layout = initial_layout;       // logical -> physical
  std::vector<int> content(n_phys);               // physical -> starting wire
  for (int p = 0; p < n_phys; ++p) content[p] = p;

  RoutedCircuit out;
  out.circuit = Circuit(n_phys);

  auto swap_wires = [&](int p, int q) {
    out.circuit.cnot(p, q).cnot(q, p).cnot(p, q);
    if (phys_to_logical[p] >= 0) layout[phys_to_logical[p]] = q;
    if (phys_to_logical[q] >= 0) layout[phys_to_logical[q]] = p;
    std::swap(phys_to_logical[p], phys_to_logical[q]);
    std::swap(content[p], content[q]);
    ++out.swap_count;
  };

  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Barrier) {
      out.circuit.barrier();
      continue;
    }
    if (!gate_kind_is_two_qubit(g.kind)) {
      Gate moved = g;
      moved.q0 = layout[g.q0];
      out.circuit.add(moved);
      continue;
    }
    std::vector<int> path = topo.shortest_path(layout[g.q0], layout[g.q1]);
    // Walk the control toward the target until they are adjacent.
    for (size_t i = 0; i + 2 < path.size(); ++i) {
      swap_wires(path[i], path[i + 1]);
    }
    out.circuit.cnot(layout[g.q0], layout[g.q1]);
  }

  out.final_layout = layout;
  out.wire_permutation.assign(n_phys, 0);
  for (int p = 0; p < n_phys; ++p) out.wire_permutation[content[p]] = p;
  return out;
}

namespace {

void lower_gate(const Gate& g, Circuit& out) {
  switch (g.kind) {
    case GateKind::Rz:
    case GateKind::X:
    case GateKind::SqrtX:
    case GateKind::Cnot:
    case GateKind::Reset:
      out.add(g);
      return;
    case GateKind::Barrier:
      return;  // dropped: output carries basis kinds only
    default:
      break;
  }
  for (Gate piece : decompose_single_qubit(gate_matrix(g))) {
    piece.q0 = g.q0;
    out.add(piece);
  }
}

Circuit merge_rz(const Circuit& c) {
  Circuit out(c.width());
  std::vector<std::optional<double>> pending(c.width());
  auto flush = [&](int q) {
    if (pending[q]) {
      double angle = reduce_angle(*pending[q]);
      if (std::abs(angle) > kAngleEps) out.rz(q, angle);
      pending[q].reset();
    }
  };
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Rz) {
      pending[g.q0] = pending[g.q0].value_or(0.0) + g.angle;
      continue;
    }
    flush(g.q0);
    if (gate_kind_is_two_qubit(g.kind)) flush(g.q1);
    out.add(g);
  }
  for (int q = 0; q < c.width(); ++q) flush(q);
  return out;
}

}  // namespace

TranspiledCircuit transpile(const Circuit& c, const Topology& topo,
                            const std::vector<int>& initial_layout) {
  std::vector<int> layout = initial_layout;
  if (layout.empty()) {
    layout.resize(c.width());
    for (int i = 0; i < c.width(); ++i) layout[i] = i;
  }
  RoutedCircuit routed = route(c, topo, layout);

  Circuit lowered(routed.circuit.width());
  for (const Gate& g : routed.circuit.gates()) lower_gate(g, lowered);

  TranspiledCircuit out;
  out.circuit = merge_rz(lowered);
  out.layout = routed.final_layout;
  out.wire_permutation = routed.wire_permutation;
  out.swap_count = routed.swap_count;
  return out;
}

Circuit embed_circuit(const Circuit& c, const std::vector<int>& layout,
                      int width) {
  if (static_cast<int>(layout.size()) != c.width()) {
    throw std::invalid_argument("layout size must match circuit width");
  }
  Circuit out(width);
  for (Gate g : c.gates()) {
    if (g.kind != GateKind::Barrier) {
      g.q0 = layout.at(g.q0);
      if (gate_kind_is_two_qubit(g.kind)) g.q1 = layout.at(g.q1);
    }
    out.add(g);
  }
  return out;
}

ComplexMatrix permutation_unitary(const std::vector<int>& perm) {
  const int width = static_cast<int>(perm.size());
  std::vector<bool> seen(width, false);
  for (int p : perm) {
    if (p < 0 || p >= width || seen[p]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[p] = true;
  }
  const int dim = 1 << width;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int in = 0; in < dim; ++in) {
    int dst = 0;
    for (int p = 0; p < width; ++p) {
      if ((in >> (width - 1 - p)) & 1) dst |= 1 << (width - 1 - perm[p]);
    }
    out(dst, in) = 1.0;
  }
  return out;
}

double verify_equivalence(const Circuit& a, const Circuit& b,
                          const std::vector<int>& permutation) {
  if (a.width() != b.width() ||
      static_cast<int>(permutation.size()) != a.width()) {
    throw std::invalid_argument("circuit widths must match the permutation");
  }
  ComplexMatrix ua = circuit_unitary(a);
  ComplexMatrix p = permutation_unitary(permutation);
  // b equals (wire permutation) * a, so compare a against P~ b. The optimal
  // phase comes from the trace in closed form; the norm is then evaluated
  // directly, which stays exact near zero where 2d - 2|tr| cancels.
  ComplexMatrix pb = p.adjoint() * circuit_unitary(b);
  Complex overlap = (ua.adjoint() * pb).trace();
  Complex phase = std::abs(overlap) > 0 ? std::conj(overlap) / std::abs(overlap)
                                        : Complex(1, 0);
  return (ua - phase * pb).norm();
}

}  // namespace twostroke
