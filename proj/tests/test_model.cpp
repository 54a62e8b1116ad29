// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/model.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace twostroke;

TEST_CASE("chain spec validation") {
  ChainSpec s = ChainSpec::heat_engine();
  CHECK_NOTHROW(s.validate());

  ChainSpec bad = s;
  bad.omegas = {0.75};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = s;
  bad.t_cold = 1.5;  // above t_hot
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = s;
  bad.t_hot = -0.3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = s;
  bad.omegas[0] = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("local hamiltonian") {
  CHECK(approx_equal(local_hamiltonian(1.0),
                     Eigen::Vector2cd(0.5, -0.5).asDiagonal()));
  CHECK(approx_equal(local_hamiltonian(0.75),
                     Eigen::Vector2cd(0.375, -0.375).asDiagonal()));
  CHECK(approx_equal(local_hamiltonian(2.0),
                     Eigen::Vector2cd(1.0, -1.0).asDiagonal()));
  CHECK_THROWS_AS(local_hamiltonian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(local_hamiltonian(-1.0), std::invalid_argument);
}

TEST_CASE("hopping interaction couples only the single-excitation block") {
  CHECK(frobenius_norm(hopping_interaction(0.0)) == doctest::Approx(0.0));

  ComplexMatrix v = hopping_interaction(0.80);
  CHECK(std::abs(v(1, 2) - Complex(0.80, 0)) < 1e-14);
  CHECK(std::abs(v(2, 1) - Complex(0.80, 0)) < 1e-14);

  // |00> and |11> are annihilated.
  for (int col : {0, 3}) {
    for (int row = 0; row < 4; ++row) {
      CHECK(std::abs(v(row, col)) < 1e-14);
    }
  }
  CHECK(is_hermitian(v));
}

TEST_CASE("stroke hamiltonians match the longhand kron sums") {
  ChainSpec s = ChainSpec::heat_engine();
  StrokeHamiltonians h = stroke_hamiltonians(s);

  ComplexMatrix hq_ref = oracles::h_q_kron_sum(s.omega_c, s.omegas[0],
                                               s.omegas[1], s.omega_h, s.g_c,
                                               s.g_h);
  CHECK((h.h_q - hq_ref).norm() < 1e-12);

  ComplexMatrix hw_ref =
      oracles::h_w_kron_sum(s.omegas[0], s.omegas[1], s.g_work[0]);
  CHECK((h.h_w - hw_ref).norm() < 1e-12);

  CHECK(is_hermitian(h.h_q));
  CHECK(is_hermitian(h.h_w));
  CHECK(h.h_locals.size() == 4);
}

TEST_CASE("non-interacting h_q is diagonal with the expected spectrum") {
  ChainSpec s = ChainSpec::heat_engine();
  s.g_c = s.g_h = 0.0;
  s.g_work = {0.0};
  StrokeHamiltonians h = stroke_hamiltonians(s);

  CHECK((h.h_q - ComplexMatrix(h.h_q.diagonal().asDiagonal())).norm() < 1e-14);

  // Eigenvalues are all sign combinations of the four half-frequencies.
  std::vector<double> expect;
  for (int mask = 0; mask < 16; ++mask) {
    double e = 0;
    double halves[4] = {s.omega_c / 2, s.omegas[0] / 2, s.omegas[1] / 2,
                        s.omega_h / 2};
    for (int b = 0; b < 4; ++b) e += ((mask >> b) & 1) ? -halves[b] : halves[b];
    expect.push_back(e);
  }
  std::sort(expect.begin(), expect.end());
  Eigen::VectorXd got = h.h_q.diagonal().real();
  std::sort(got.begin(), got.end());
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(got(i) - expect[i]) < 1e-12);
  }
}

TEST_CASE("strict energy conservation residuals") {
  ChainSpec s = ChainSpec::heat_engine();
  auto [rc, rh] = strict_energy_conservation_residual(s);
  CHECK(rc < 1e-12);
  CHECK(rh < 1e-12);

  ChainSpec detuned = s;
  detuned.omega_c = s.omegas[0] + 0.5;
  auto [rc2, rh2] = strict_energy_conservation_residual(detuned);
  CHECK(rc2 > 0.0);
  CHECK(rh2 < 1e-12);

  // Commutator oracle evaluated longhand for the detuned cold pair.
  ComplexMatrix i2 = identity(2);
  ComplexMatrix v = hopping_interaction(detuned.g_c);
  ComplexMatrix pair = kron(local_hamiltonian(detuned.omega_c), i2) +
                       kron(i2, local_hamiltonian(detuned.omegas[0]));
  CHECK(rc2 == doctest::Approx((v * pair - pair * v).norm()).epsilon(1e-12));

  ChainSpec uncoupled = s;
  uncoupled.g_c = uncoupled.g_h = 0.0;
  auto [rc3, rh3] = strict_energy_conservation_residual(uncoupled);
  CHECK(rc3 == doctest::Approx(0.0));
  CHECK(rh3 == doctest::Approx(0.0));
}

TEST_CASE("resonance breaking by any delta >= 1e-3 is detectable") {
  ChainSpec s = ChainSpec::heat_engine();
  for (double delta : {1e-3, 1e-2, 0.1, 0.5}) {
    ChainSpec d = s;
    d.omega_h = s.omegas[1] + delta;
    auto [rc, rh] = strict_energy_conservation_residual(d);
    CHECK(rc < 1e-12);
    CHECK(rh > 0.0);
  }
}

TEST_CASE("gibbs state matches the closed-form two-level populations") {
  // Cold bath of the heat-engine set.
  DensityMatrix rho = gibbs_state(local_hamiltonian(0.75), 0.40);
  auto pops = oracles::two_level_gibbs(0.75, 0.40);
  CHECK(std::abs(rho.matrix()(0, 0).real() - pops.p0) < 1e-12);
  CHECK(std::abs(rho.matrix()(1, 1).real() - pops.p1) < 1e-12);
  CHECK(std::abs(rho.matrix()(0, 1)) < 1e-14);

  // Hot bath of the heat-engine set.
  DensityMatrix hot = gibbs_state(local_hamiltonian(1.0), 0.80);
  auto hot_pops = oracles::two_level_gibbs(1.0, 0.80);
  CHECK(std::abs(hot.matrix()(0, 0).real() - hot_pops.p0) < 1e-12);
  CHECK(std::abs(hot.matrix()(1, 1).real() - hot_pops.p1) < 1e-12);
}

TEST_CASE("gibbs state limits and errors") {
  DensityMatrix hi_t = gibbs_state(local_hamiltonian(1.0), 1e6);
  CHECK(trace_distance(hi_t, DensityMatrix::maximally_mixed({2})) < 1e-5);

  // Deep-freeze limit stays finite: pure ground state |1>.
  DensityMatrix lo_t = gibbs_state(local_hamiltonian(1.0), 1e-3);
  CHECK(trace_distance(lo_t, DensityMatrix::basis({2}, 1)) < 1e-10);

  CHECK_THROWS_AS(gibbs_state(local_hamiltonian(1.0), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(gibbs_state(local_hamiltonian(1.0), -0.4),
                  std::invalid_argument);
  CHECK_THROWS_AS(gibbs_state(Complex(0, 1) * pauli_x(), 1.0),
                  std::invalid_argument);
}

TEST_CASE("gibbs state commutes with its hamiltonian and orders populations") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 10; ++it) {
    ComplexMatrix h = oracles::random_hermitian(rng, 4, 2.0);
    DensityMatrix rho = gibbs_state(h, 0.7);
    CHECK((h * rho.matrix() - rho.matrix() * h).norm() < 1e-10);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    // Populations (in the energy eigenbasis) must decrease with energy.
    ComplexMatrix v = es.eigenvectors();
    ComplexMatrix in_basis = v.adjoint() * rho.matrix() * v;
    for (int i = 0; i + 1 < 4; ++i) {
      CHECK(in_basis(i, i).real() >= in_basis(i + 1, i + 1).real() - 1e-12);
    }
  }
}

TEST_CASE("zero-coupling propagator factorizes into local phase rotations") {
  ChainSpec s = ChainSpec::heat_engine();
  s.g_c = s.g_h = 0.0;
  s.g_work = {0.0};
  StrokeHamiltonians h = stroke_hamiltonians(s);

  double tau = 0.9;
  ComplexMatrix u = herm_propagator(h.h_q, tau);
  ComplexMatrix product = identity(1);
  for (const ComplexMatrix& local : h.h_locals) {
    product = kron(product, herm_propagator(local, tau));
  }
  CHECK((u - product).norm() < 1e-10);
}
