// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace twostroke {

namespace {

int width_from_dim(int dim) {
  int width = 0;
  while ((1 << width) < dim) ++width;
  if ((1 << width) != dim) {
    throw std::invalid_argument("state dimension is not a power of two");
  }
  return width;
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Rz: return "RZ";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::X: return "X";
    case GateKind::SqrtX: return "SX";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Reset: return "RESET";
    case GateKind::Barrier: return "BARRIER";
  }
  return "?";
}

bool gate_kind_has_angle(GateKind kind) {
  return kind == GateKind::Rz || kind == GateKind::Rx || kind == GateKind::Ry;
}

bool gate_kind_is_two_qubit(GateKind kind) { return kind == GateKind::Cnot; }

Circuit::Circuit(int width) : width_(width) {
  if (width < 0) throw std::invalid_argument("negative circuit width");
}

bool Circuit::has_reset() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind == GateKind::Reset;
  });
}

void Circuit::add(Gate gate) {
  if (gate.kind == GateKind::Barrier) {
    gates_.push_back(gate);
    return;
  }
  if (gate.q0 < 0 || gate.q0 >= width_) {
    throw std::invalid_argument("gate target out of range");
  }
  if (gate_kind_is_two_qubit(gate.kind)) {
    if (gate.q1 < 0 || gate.q1 >= width_) {
      throw std::invalid_argument("gate target out of range");
    }
    if (gate.q1 == gate.q0) {
      throw std::invalid_argument("two-qubit gate targets must be distinct");
    }
  } else {
    gate.q1 = -1;
  }
  if (gate_kind_has_angle(gate.kind)) {
    if (!std::isfinite(gate.angle)) {
      throw std::invalid_argument("gate angle must be finite");
    }
  } else {
    gate.angle = 0;
  }
  gates_.push_back(gate);
}

Circuit& Circuit::rz(int q, double angle) {
  add({GateKind::Rz, q, -1, angle});
  return *this;
}
Circuit& Circuit::rx(int q, double angle) {
  add({GateKind::Rx, q, -1, angle});
  return *this;
}
Circuit& Circuit::ry(int q, double angle) {
  add({GateKind::Ry, q, -1, angle});
  return *this;
}
Circuit& Circuit::x(int q) {
  add({GateKind::X, q, -1, 0});
  return *this;
}
Circuit& Circuit::sx(int q) {
  add({GateKind::SqrtX, q, -1, 0});
  return *this;
}
Circuit& Circuit::h(int q) {
  add({GateKind::H, q, -1, 0});
  return *this;
}
Circuit& Circuit::s(int q) {
  add({GateKind::S, q, -1, 0});
  return *this;
}
Circuit& Circuit::sdg(int q) {
  add({GateKind::Sdg, q, -1, 0});
  return *this;
}
Circuit& Circuit::cnot(int control, int target) {
  add({GateKind::Cnot, control, target, 0});
  return *this;
}
Circuit& Circuit::reset(int q) {
  add({GateKind::Reset, q, -1, 0});
  return *this;
}
Circuit& Circuit::barrier() {
  add({GateKind::Barrier, 0, -1, 0});
  return *this;
}

ComplexMatrix gate_matrix(const Gate& gate) {
  const Complex i(0, 1);
  switch (gate.kind) {
    case GateKind::Rz: {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = std::exp(-i * (gate.angle / 2));
      m(1, 1) = std::exp(i * (gate.angle / 2));
      return m;
    }
    case GateKind::Rx: {
      double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      ComplexMatrix m(2, 2);
      m << Complex(c, 0), -i * s, -i * s, Complex(c, 0);
      return m;
    }
    case GateKind::Ry: {
      double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      ComplexMatrix m(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::X:
      return pauli_x();
    case GateKind::SqrtX: {
      ComplexMatrix m(2, 2);
      m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5),
          Complex(0.5, 0.5);
      return m;
    }
    case GateKind::H: {
      ComplexMatrix m(2, 2);
      double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::S: {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = 1;
      m(1, 1) = i;
      return m;
    }
    case GateKind::Sdg: {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = 1;
      m(1, 1) = -i;
      return m;
    }
    case GateKind::Cnot: {
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return m;
    }
    case GateKind::Reset:
    case GateKind::Barrier:
      break;
  }
  throw std::invalid_argument("gate has no unitary matrix");
}

ComplexMatrix embed_gate(const ComplexMatrix& u,
                         const std::vector<int>& targets, int width) {
  const int k = static_cast<int>(targets.size());
  if (u.rows() != (1 << k) || u.cols() != (1 << k)) {
    throw std::invalid_argument("gate matrix does not match target count");
  }
  // Bit position of each target in the basis index; first listed target is
  // the most significant sub-index bit.
  std::vector<int> shifts(k);
  int target_mask = 0;
  for (int t = 0; t < k; ++t) {
    if (targets[t] < 0 || targets[t] >= width) {
      throw std::invalid_argument("embed target out of range");
    }
    shifts[t] = width - 1 - targets[t];
    if (target_mask & (1 << shifts[t])) {
      throw std::invalid_argument("embed targets must be distinct");
    }
    target_mask |= 1 << shifts[t];
  }

  const int dim = 1 << width;
  const int sub_dim = 1 << k;
  auto lift = [&](int base, int sub) {
    int idx = base;
    for (int t = 0; t < k; ++t) {
      if ((sub >> (k - 1 - t)) & 1) idx |= 1 << shifts[t];
    }
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int base = 0; base < dim; ++base) {
    if (base & target_mask) continue;
    for (int a = 0; a < sub_dim; ++a) {
      int row = lift(base, a);
      for (int b = 0; b < sub_dim; ++b) {
        out(row, lift(base, b)) = u(a, b);
      }
    }
  }
  return out;
}

namespace {

ComplexMatrix embedded_gate_unitary(const Gate& gate, int width) {
  std::vector<int> targets{gate.q0};
  if (gate_kind_is_two_qubit(gate.kind)) targets.push_back(gate.q1);
  return embed_gate(gate_matrix(gate), targets, width);
}

}  // namespace

DensityMatrix apply_circuit(const DensityMatrix& rho, const Circuit& c) {
  if (rho.dim() != (1 << c.width())) {
    throw std::invalid_argument("state dimension does not match circuit width");
  }
  ComplexMatrix m = rho.matrix();
  const int width = c.width();
  for (const Gate& gate : c.gates()) {
    if (gate.kind == GateKind::Barrier) continue;
    if (gate.kind == GateKind::Reset) {
      // Measure in z and flip the |1> branch: trace preserving.
      ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
      p0(0, 0) = 1;
      ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
      p1(1, 1) = 1;
      ComplexMatrix p0f = embed_gate(p0, {gate.q0}, width);
      ComplexMatrix flip = embed_gate(pauli_x() * p1, {gate.q0}, width);
      m = p0f * m * p0f.adjoint() + flip * m * flip.adjoint();
      continue;
    }
    ComplexMatrix u = embedded_gate_unitary(gate, width);
    m = u * m * u.adjoint();
  }
  return DensityMatrix(std::move(m), rho.dims());
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  if (c.has_reset()) {
    throw std::runtime_error("circuit with RESET has no unitary");
  }
  ComplexMatrix u = identity(1 << c.width());
  for (const Gate& gate : c.gates()) {
    if (gate.kind == GateKind::Barrier) continue;
    u = embedded_gate_unitary(gate, c.width()) * u;
  }
  return u;
}

namespace {

// exp(-i (theta/2) XX) on (a, b): Hadamard-conjugated CNOT-Rz-CNOT block.
void append_xx(Circuit& c, int a, int b, double theta) {
  c.h(a).h(b);
  c.cnot(a, b).rz(b, theta).cnot(a, b);
  c.h(a).h(b);
}

// exp(-i (theta/2) YY): the same block conjugated by S H per qubit.
void append_yy(Circuit& c, int a, int b, double theta) {
  c.sdg(a).sdg(b).h(a).h(b);
  c.cnot(a, b).rz(b, theta).cnot(a, b);
  c.h(a).h(b).s(a).s(b);
}

}  // namespace

Circuit build_heat_stroke_circuit(const ChainSpec& spec, double tau_q) {
  spec.validate();
  if (!(tau_q >= 0.0) || !std::isfinite(tau_q)) {
    throw std::invalid_argument("tau_q must be finite and >= 0");
  }
  const int n = spec.n_sites;
  Circuit c(n + 2);
  c.rz(0, spec.omega_c * tau_q);
  for (int i = 0; i < n; ++i) c.rz(1 + i, spec.omegas[i] * tau_q);
  c.rz(n + 1, spec.omega_h * tau_q);
  append_xx(c, 0, 1, spec.g_c * tau_q);
  append_xx(c, n, n + 1, spec.g_h * tau_q);
  append_yy(c, 0, 1, spec.g_c * tau_q);
  append_yy(c, n, n + 1, spec.g_h * tau_q);
  return c;
}

Circuit build_work_stroke_circuit(const ChainSpec& spec, double tau_w) {
  spec.validate();
  if (!(tau_w >= 0.0) || !std::isfinite(tau_w)) {
    throw std::invalid_argument("tau_w must be finite and >= 0");
  }
  const int n = spec.n_sites;
  Circuit c(n);
  for (int i = 0; i < n; ++i) c.rz(i, spec.omegas[i] * tau_w);
  for (int i = 0; i + 1 < n; ++i) append_xx(c, i, i + 1, spec.g_work[i] * tau_w);
  for (int i = 0; i + 1 < n; ++i) append_yy(c, i, i + 1, spec.g_work[i] * tau_w);
  return c;
}

double sigma_z_expectation(const DensityMatrix& rho, int qubit) {
  int width = width_from_dim(rho.dim());
  if (qubit < 0 || qubit >= width) {
    throw std::invalid_argument("qubit index out of range");
  }
  double value = 0.0;
  const int bit = 1 << (width - 1 - qubit);
  for (int i = 0; i < rho.dim(); ++i) {
    double p = rho.matrix()(i, i).real();
    value += (i & bit) ? -p : p;
  }
  return value;
}

ShotEstimate sample_sigma_z(const DensityMatrix& rho, int qubit, int shots,
                            std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  double p0 = 0.5 * (1.0 + sigma_z_expectation(rho, qubit));
  p0 = std::min(1.0, std::max(0.0, p0));

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in_zero(p0);
  long long n0 = 0;
  for (int s = 0; s < shots; ++s) {
    if (in_zero(rng)) ++n0;
  }
  double p_hat = static_cast<double>(n0) / shots;
  ShotEstimate est;
  est.mean = 2.0 * p_hat - 1.0;
  est.std_error = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / shots);
  est.shots = shots;
  est.seed = seed;
  return est;
}

void write_circuit(const Circuit& c, std::ostream& out) {
  out << "# qubits: " << c.width() << "\n";
  char buf[64];
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Barrier) {
      out << "BARRIER\n";
      continue;
    }
    out << gate_kind_name(g.kind) << ' ' << g.q0;
    if (gate_kind_is_two_qubit(g.kind)) out << ' ' << g.q1;
    if (gate_kind_has_angle(g.kind)) {
      std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

std::string circuit_to_string(const Circuit& c) {
  std::ostringstream out;
  write_circuit(c, out);
  return out.str();
}

namespace {

GateKind parse_gate_kind(const std::string& token, int line_no) {
  static const std::pair<const char*, GateKind> kNames[] = {
      {"RZ", GateKind::Rz},       {"RX", GateKind::Rx},
      {"RY", GateKind::Ry},       {"X", GateKind::X},
      {"SX", GateKind::SqrtX},    {"H", GateKind::H},
      {"S", GateKind::S},         {"SDG", GateKind::Sdg},
      {"CNOT", GateKind::Cnot},   {"RESET", GateKind::Reset},
      {"BARRIER", GateKind::Barrier},
  };
  for (const auto& [name, kind] : kNames) {
    if (token == name) return kind;
  }
  throw std::runtime_error("line " + std::to_string(line_no) +
                           ": unknown gate '" + token + "'");
}

}  // namespace

Circuit read_circuit(std::istream& in) {
  std::vector<Gate> gates;
  int width_hint = 0;
  int max_target = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    auto hash = view.find('#');
    if (hash != std::string_view::npos) {
      std::string comment(view.substr(hash + 1));
      std::istringstream cs(comment);
      std::string word;
      int n = 0;
      if (cs >> word && word == "qubits:" && cs >> n && n > 0) {
        width_hint = std::max(width_hint, n);
      }
      view = view.substr(0, hash);
    }
    std::istringstream ls{std::string(view)};
    std::string name;
    if (!(ls >> name)) continue;  // blank line

    Gate g;
    g.kind = parse_gate_kind(name, line_no);
    auto bad = [&](const std::string& what) {
      return std::runtime_error("line " + std::to_string(line_no) + ": " + what);
    };
    if (g.kind == GateKind::Barrier) {
      std::string extra;
      if (ls >> extra) throw bad("unexpected token after BARRIER");
      gates.push_back(g);
      continue;
    }
    if (!(ls >> g.q0) || g.q0 < 0) throw bad("expected qubit index");
    if (gate_kind_is_two_qubit(g.kind)) {
      if (!(ls >> g.q1) || g.q1 < 0) throw bad("expected second qubit index");
      max_target = std::max(max_target, g.q1);
    }
    if (gate_kind_has_angle(g.kind)) {
      if (!(ls >> g.angle)) throw bad("expected angle");
    }
    std::string extra;
    if (ls >> extra) throw bad("unexpected trailing token '" + extra + "'");
    max_target = std::max(max_target, g.q0);
    gates.push_back(g);
  }

  Circuit c(std::max(width_hint, max_target + 1));
  for (const Gate& g : gates) c.add(g);
  return c;
}

Circuit circuit_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_circuit(in);
}

}  // namespace twostroke
