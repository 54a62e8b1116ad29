// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/model.hpp"

#include <cmath>
#include <stdexcept>

namespace twostroke {

namespace {

// op over `span` qubits placed at position q of a width-qubit register.
ComplexMatrix embed_at(const ComplexMatrix& op, int q, int span, int width) {
  ComplexMatrix out = identity(1 << q);
  out = kron(out, op);
  int trailing = width - q - span;
  if (trailing > 0) out = kron(out, identity(1 << trailing));
  return out;
}

}  // namespace

void ChainSpec::validate() const {
  if (n_sites < 2) throw std::invalid_argument("chain needs at least 2 sites");
  if (static_cast<int>(omegas.size()) != n_sites) {
    throw std::invalid_argument("omegas length must equal n_sites");
  }
  if (static_cast<int>(g_work.size()) != n_sites - 1) {
    throw std::invalid_argument("g_work length must equal n_sites - 1");
  }
  for (double w : omegas) {
    if (!(w > 0.0)) throw std::invalid_argument("site frequencies must be > 0");
  }
  if (!(omega_c > 0.0) || !(omega_h > 0.0)) {
    throw std::invalid_argument("bath frequencies must be > 0");
  }
  if (!(t_cold > 0.0) || !(t_hot > 0.0)) {
    throw std::invalid_argument("bath temperatures must be > 0");
  }
  if (t_cold > t_hot) {
    throw std::invalid_argument("t_cold must not exceed t_hot");
  }
}

ChainSpec ChainSpec::heat_engine() {
  ChainSpec s;
  s.n_sites = 2;
  s.omegas = {0.75, 1.0};
  s.omega_c = 0.75;
  s.omega_h = 1.0;
  s.g_work = {0.80};
  s.g_c = 0.80;
  s.g_h = 0.80;
  s.t_cold = 0.40;
  s.t_hot = 0.80;
  return s;
}

ChainSpec ChainSpec::refrigerator() {
  ChainSpec s;
  s.n_sites = 2;
  s.omegas = {0.50, 2.0};
  s.omega_c = 0.50;
  s.omega_h = 2.0;
  s.g_work = {0.80};
  s.g_c = 0.80;
  s.g_h = 0.80;
  s.t_cold = 1.0;
  s.t_hot = 1.2;
  return s;
}

ChainSpec ChainSpec::accelerator() {
  ChainSpec s;
  s.n_sites = 2;
  s.omegas = {2.0, 0.50};
  s.omega_c = 2.0;
  s.omega_h = 0.50;
  s.g_work = {0.80};
  s.g_c = 0.80;
  s.g_h = 0.80;
  s.t_cold = 1.0;
  s.t_hot = 1.2;
  return s;
}

ComplexMatrix local_hamiltonian(double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("local frequency must be > 0");
  }
  return 0.5 * omega * pauli_z();
}

ComplexMatrix hopping_interaction(double g) {
  return 0.5 * g *
         (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()));
}

StrokeHamiltonians stroke_hamiltonians(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const int width_q = n + 2;

  StrokeHamiltonians out;
  out.h_locals.push_back(local_hamiltonian(spec.omega_c));
  for (double w : spec.omegas) out.h_locals.push_back(local_hamiltonian(w));
  out.h_locals.push_back(local_hamiltonian(spec.omega_h));

  const int dim_q = 1 << width_q;
  out.h_q = ComplexMatrix::Zero(dim_q, dim_q);
  for (int q = 0; q < width_q; ++q) {
    out.h_q += embed_at(out.h_locals[q], q, 1, width_q);
  }
  out.h_q += embed_at(hopping_interaction(spec.g_c), 0, 2, width_q);
  out.h_q += embed_at(hopping_interaction(spec.g_h), n, 2, width_q);

  const int dim_w = 1 << n;
  out.h_w = ComplexMatrix::Zero(dim_w, dim_w);
  for (int i = 0; i < n; ++i) {
    out.h_w += embed_at(local_hamiltonian(spec.omegas[i]), i, 1, n);
  }
  for (int i = 0; i + 1 < n; ++i) {
    out.h_w += embed_at(hopping_interaction(spec.g_work[i]), i, 2, n);
  }
  return out;
}

std::pair<double, double> strict_energy_conservation_residual(
    const ChainSpec& spec) {
  spec.validate();
  ComplexMatrix i2 = identity(2);

  ComplexMatrix v_c = hopping_interaction(spec.g_c);
  ComplexMatrix pair_c = kron(local_hamiltonian(spec.omega_c), i2) +
                         kron(i2, local_hamiltonian(spec.omegas.front()));
  ComplexMatrix v_h = hopping_interaction(spec.g_h);
  ComplexMatrix pair_h = kron(local_hamiltonian(spec.omegas.back()), i2) +
                         kron(i2, local_hamiltonian(spec.omega_h));

  return {frobenius_norm(commutator(v_c, pair_c)),
          frobenius_norm(commutator(v_h, pair_h))};
}

DensityMatrix gibbs_state(const ComplexMatrix& h, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be > 0");
  }
  if (!is_hermitian(h)) {
    throw std::invalid_argument("gibbs state requires a Hermitian Hamiltonian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  // Shift by the ground energy so low temperatures stay finite.
  double e0 = evals.minCoeff();
  Eigen::VectorXd weights(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    weights(i) = std::exp(-(evals(i) - e0) / temperature);
  }
  weights /= weights.sum();
  ComplexMatrix v = solver.eigenvectors();
  ComplexMatrix rho = v * weights.cast<Complex>().asDiagonal() * v.adjoint();
  return DensityMatrix(std::move(rho),
                       {static_cast<int>(h.rows())});
}

}  // namespace twostroke
