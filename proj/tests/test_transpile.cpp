// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/transpile.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace twostroke;

namespace {

Circuit gates_as_circuit(const std::vector<Gate>& gates, int width) {
  Circuit c(width);
  for (const Gate& g : gates) c.add(g);
  return c;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

int cnot_count(const Circuit& c) {
  int n = 0;
  for (const Gate& g : c.gates()) n += g.kind == GateKind::Cnot;
  return n;
}

bool basis_only(const Circuit& c) {
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Rz:
      case GateKind::X:
      case GateKind::SqrtX:
      case GateKind::Cnot:
      case GateKind::Reset:
        break;
      default:
        return false;
    }
  }
  return true;
}

Circuit random_circuit(std::mt19937_64& rng, int width, int depth) {
  std::uniform_int_distribution<int> kind_dist(0, 8);
  std::uniform_int_distribution<int> qubit_dist(0, width - 1);
  std::uniform_real_distribution<double> angle_dist(-M_PI, M_PI);
  Circuit c(width);
  for (int i = 0; i < depth; ++i) {
    int q = qubit_dist(rng);
    switch (kind_dist(rng)) {
      case 0: c.rz(q, angle_dist(rng)); break;
      case 1: c.rx(q, angle_dist(rng)); break;
      case 2: c.ry(q, angle_dist(rng)); break;
      case 3: c.x(q); break;
      case 4: c.sx(q); break;
      case 5: c.h(q); break;
      case 6: c.s(q); break;
      case 7: c.sdg(q); break;
      default: {
        int t = qubit_dist(rng);
        while (t == q) t = qubit_dist(rng);
        c.cnot(q, t);
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("topology construction and paths") {
  Topology line = Topology::line(4);
  CHECK(line.adjacent(1, 2));
  CHECK(line.adjacent(2, 1));
  CHECK(!line.adjacent(0, 2));
  CHECK(line.shortest_path(0, 3) == std::vector<int>{0, 1, 2, 3});

  CHECK_THROWS_AS(Topology(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(2, {{0, 5}}), std::invalid_argument);

  Topology split(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(split.shortest_path(0, 3), std::runtime_error);
}

TEST_CASE("topology parsing") {
  Topology t = parse_topology("0-1,1-2 2-3");
  CHECK(t.n_qubits() == 4);
  CHECK(t.adjacent(2, 3));
  CHECK_THROWS_AS(parse_topology("0-"), std::invalid_argument);
  CHECK_THROWS_AS(parse_topology("ab"), std::invalid_argument);
  CHECK_THROWS_AS(parse_topology(""), std::invalid_argument);
}

TEST_CASE("permutation unitary convention") {
  CHECK(approx_equal(permutation_unitary({0, 1}), identity(4)));
  ComplexMatrix swap = permutation_unitary({1, 0});
  ComplexVector in = ComplexVector::Zero(4);
  in(1) = 1.0;  // |01>
  ComplexVector out = swap * in;
  CHECK(std::abs(out(2) - Complex(1, 0)) < 1e-14);  // |10>
  CHECK_THROWS_AS(permutation_unitary({0, 0}), std::invalid_argument);
}

TEST_CASE("single-qubit decomposition named cases") {
  CHECK(decompose_single_qubit(identity(2)).empty());

  Gate rz{GateKind::Rz, 0, -1, 0.7};
  auto seq = decompose_single_qubit(gate_matrix(rz));
  REQUIRE(seq.size() == 1);
  CHECK(seq[0].kind == GateKind::Rz);
  CHECK(seq[0].angle == doctest::Approx(0.7).epsilon(1e-12));

  Gate h{GateKind::H, 0, -1, 0};
  Circuit hc(1);
  hc.h(0);
  Circuit lowered = gates_as_circuit(decompose_single_qubit(gate_matrix(h)), 1);
  CHECK(verify_equivalence(hc, lowered, {0}) < 1e-10);

  // X shortens to SX SX (the middle rotation collapses).
  auto xseq = decompose_single_qubit(pauli_x());
  REQUIRE(xseq.size() == 2);
  CHECK(xseq[0].kind == GateKind::SqrtX);
  CHECK(xseq[1].kind == GateKind::SqrtX);

  CHECK_THROWS_AS(decompose_single_qubit(2.0 * identity(2)),
                  std::invalid_argument);
}

TEST_CASE("single-qubit decomposition round-trips 200 random unitaries") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 200; ++it) {
    ComplexMatrix u = oracles::random_unitary(rng, 2);
    Circuit got = gates_as_circuit(decompose_single_qubit(u), 1);
    // Compare gate product against u directly, phase-invariantly.
    ComplexMatrix gu = circuit_unitary(got);
    Complex overlap = (u.adjoint() * gu).trace();
    Complex phase = std::conj(overlap) / std::abs(overlap);
    CHECK((u - phase * gu).norm() < 1e-8);
  }
}

TEST_CASE("route keeps adjacent circuits untouched") {
  Topology line = Topology::line(4);
  Circuit c(4);
  c.h(0).cnot(0, 1).cnot(2, 1).rz(3, 0.4).cnot(2, 3);
  RoutedCircuit r = route(c, line, identity_perm(4));
  CHECK(r.swap_count == 0);
  CHECK(r.circuit.gates().size() == c.gates().size());
  CHECK(r.final_layout == identity_perm(4));
  CHECK(verify_equivalence(c, r.circuit, r.wire_permutation) < 1e-10);
}

TEST_CASE("route inserts one swap for CNOT(0,2) on a 3-qubit line") {
  Topology line = Topology::line(3);
  Circuit c(3);
  c.cnot(0, 2);
  RoutedCircuit r = route(c, line, identity_perm(3));
  CHECK(r.swap_count == 1);
  CHECK(cnot_count(r.circuit) == 4);  // 3 for the swap + the gate itself
  Circuit embedded = embed_circuit(c, identity_perm(3), 3);
  CHECK(verify_equivalence(embedded, r.circuit, r.wire_permutation) < 1e-10);
  // The permutation is genuinely needed here.
  CHECK(verify_equivalence(embedded, r.circuit, identity_perm(3)) > 1e-2);
}

TEST_CASE("route walks a distance-3 CNOT with two swaps") {
  Topology line = Topology::line(4);
  Circuit c(4);
  c.h(0).cnot(0, 3).cnot(1, 2).cnot(0, 3);
  RoutedCircuit r = route(c, line, identity_perm(4));
  // First CNOT(0,3) costs two swaps; afterwards logical 0 sits next to 3,
  // so the second one is free.
  CHECK(r.swap_count == 2);
  Circuit embedded = embed_circuit(c, identity_perm(4), 4);
  CHECK(verify_equivalence(embedded, r.circuit, r.wire_permutation) < 1e-10);

  TranspiledCircuit t = transpile(c, line);
  CHECK(verify_equivalence(embedded, t.circuit, t.wire_permutation) < 1e-8);
  CHECK(cnot_count(t.circuit) == cnot_count(c) + 3 * t.swap_count);
}

TEST_CASE("route empty circuit and bad layouts") {
  Topology line = Topology::line(3);
  RoutedCircuit r = route(Circuit(3), line, identity_perm(3));
  CHECK(r.circuit.gates().empty());
  CHECK(r.swap_count == 0);

  CHECK_THROWS_AS(route(Circuit(3), line, {0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(route(Circuit(3), line, {0, 1}), std::invalid_argument);

  Topology split(3, {{0, 1}});
  Circuit c(3);
  c.cnot(0, 2);
  CHECK_THROWS_AS(route(c, split, identity_perm(3)), std::runtime_error);
}

TEST_CASE("transpiled stroke circuits stay on the line with zero swaps") {
  ChainSpec spec = ChainSpec::heat_engine();
  Topology line = Topology::line(4);

  Circuit heat = build_heat_stroke_circuit(spec, 1.0);
  TranspiledCircuit t = transpile(heat, line);
  CHECK(t.swap_count == 0);
  CHECK(basis_only(t.circuit));
  for (const Gate& g : t.circuit.gates()) {
    if (g.kind == GateKind::Cnot) CHECK(line.adjacent(g.q0, g.q1));
  }
  CHECK(verify_equivalence(heat, t.circuit, t.wire_permutation) < 1e-8);

  Circuit work = build_work_stroke_circuit(spec, 1.0);
  TranspiledCircuit tw = transpile(work, Topology::line(2));
  CHECK(tw.swap_count == 0);
  CHECK(basis_only(tw.circuit));
  CHECK(verify_equivalence(work, tw.circuit, tw.wire_permutation) < 1e-8);
}

TEST_CASE("transpile lowers a single H to basis gates") {
  Circuit c(1);
  c.h(0);
  TranspiledCircuit t = transpile(c, Topology::line(1));
  CHECK(t.swap_count == 0);
  CHECK(basis_only(t.circuit));
  CHECK(!t.circuit.gates().empty());
  CHECK(verify_equivalence(c, t.circuit, {0}) < 1e-8);
}

TEST_CASE("transpile random circuits: equivalence and cnot accounting") {
  std::mt19937_64 rng(71);
  Topology line = Topology::line(3);
  for (int it = 0; it < 25; ++it) {
    Circuit c = random_circuit(rng, 3, 10);
    TranspiledCircuit t = transpile(c, line);
    CHECK(basis_only(t.circuit));
    CHECK(cnot_count(t.circuit) == cnot_count(c) + 3 * t.swap_count);
    Circuit embedded = embed_circuit(c, identity_perm(3), 3);
    CHECK(verify_equivalence(embedded, t.circuit, t.wire_permutation) < 1e-8);
  }
}

TEST_CASE("adjacent rz gates merge and cancel") {
  Circuit c(2);
  c.rz(0, 0.3).rz(0, 0.4).h(1).rz(1, M_PI).rz(1, -M_PI).cnot(0, 1);
  TranspiledCircuit t = transpile(c, Topology::line(2));
  int rz_on_1 = 0;
  double angle_on_0 = 0;
  for (const Gate& g : t.circuit.gates()) {
    if (g.kind == GateKind::Rz && g.q0 == 0) angle_on_0 += g.angle;
    if (g.kind == GateKind::Rz && g.q0 == 1) ++rz_on_1;
  }
  CHECK(angle_on_0 == doctest::Approx(0.7).epsilon(1e-12));
  // The pi and -pi rotations cancel into H's lowering; no extra RZs survive.
  CHECK(verify_equivalence(c, t.circuit, identity_perm(2)) < 1e-8);
  CHECK(rz_on_1 <= 3);
}

TEST_CASE("reset passes through transpilation") {
  Circuit c(2);
  c.h(0).reset(1).cnot(0, 1);
  TranspiledCircuit t = transpile(c, Topology::line(2));
  bool has_reset = false;
  for (const Gate& g : t.circuit.gates()) {
    has_reset |= g.kind == GateKind::Reset;
  }
  CHECK(has_reset);
  CHECK(basis_only(t.circuit));
}

TEST_CASE("verify_equivalence closed form") {
  Circuit a(1), b(1);
  a.h(0).rz(0, 0.3);
  b.h(0).rz(0, 0.3);
  CHECK(verify_equivalence(a, b, {0}) == doctest::Approx(0.0).epsilon(1e-12));

  // Global phase only: S S = Z vs RZ(pi) = -i Z.
  Circuit z1(1), z2(1);
  z1.s(0).s(0);
  z2.rz(0, M_PI);
  CHECK(verify_equivalence(z1, z2, {0}) < 1e-12);

  Circuit x(1), rzpi(1);
  x.x(0);
  rzpi.rz(0, M_PI);
  CHECK(verify_equivalence(x, rzpi, {0}) > 1.0);

  Circuit wide(2);
  CHECK_THROWS_AS(verify_equivalence(a, wide, {0, 1}), std::invalid_argument);
}
