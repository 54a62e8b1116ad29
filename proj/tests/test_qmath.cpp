// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/qmath.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace twostroke;

TEST_CASE("kron basics") {
  CHECK(approx_equal(kron(pauli_z(), identity(2)),
                     Eigen::Vector4cd(1, 1, -1, -1).asDiagonal()));
  CHECK(approx_equal(kron(identity(2), identity(2)), identity(4)));

  ComplexMatrix xx = kron(pauli_x(), pauli_x());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(xx(i, j) == Complex(i + j == 3 ? 1 : 0, 0));
    }
  }
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(pauli_x(), {2}), std::invalid_argument);

  ComplexMatrix not_unit = 0.5 * identity(2) * 1.5;
  CHECK_THROWS_AS(DensityMatrix(not_unit, {2}), std::invalid_argument);

  ComplexMatrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS(DensityMatrix(neg, {2}), std::invalid_argument);

  CHECK_THROWS_AS(DensityMatrix(0.25 * identity(4), {2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(0.25 * identity(4), {4, 1}),
                  std::invalid_argument);

  DensityMatrix ok = DensityMatrix::maximally_mixed({2, 2});
  CHECK(ok.dim() == 4);
  CHECK(ok.with_dims({4}).num_subsystems() == 1);
}

TEST_CASE("partial trace of a product state returns the kept factor") {
  ComplexMatrix a(2, 2);
  a << Complex(0.7, 0), Complex(0.2, 0.1), Complex(0.2, -0.1), Complex(0.3, 0);
  ComplexMatrix b(2, 2);
  b << 0.6, 0.1, 0.1, 0.4;
  DensityMatrix rho(kron(a, b), {2, 2});

  CHECK(approx_equal(partial_trace(rho, {0}).matrix(), a, 1e-12));
  CHECK(approx_equal(partial_trace(rho, {1}).matrix(), b, 1e-12));
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  ComplexVector bell(4);
  bell << 1, 0, 0, 1;
  DensityMatrix rho = DensityMatrix::pure(bell, {2, 2});
  CHECK(approx_equal(partial_trace(rho, {0}).matrix(), 0.5 * identity(2),
                     1e-12));
}

TEST_CASE("partial trace identity and error cases") {
  std::mt19937_64 rng(11);
  DensityMatrix rho = oracles::random_density(rng, {2, 2, 2});
  CHECK(approx_equal(partial_trace(rho, {0, 1, 2}).matrix(), rho.matrix(),
                     1e-12));
  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {3}), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace and positivity on random states") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 25; ++it) {
    DensityMatrix rho = oracles::random_density(rng, {2, 2, 2});
    for (std::vector<int> keep : {std::vector<int>{0}, {1}, {2}, {0, 2}}) {
      DensityMatrix red = partial_trace(rho, keep);
      CHECK(std::abs(red.matrix().trace().real() - 1.0) < 1e-12);
      CHECK(std::abs(red.matrix().trace().imag()) < 1e-12);
    }
  }
}

TEST_CASE("partial trace over mixed subsystem dimensions") {
  // qubit x qutrit product; tracing the qutrit returns the qubit.
  ComplexMatrix a(2, 2);
  a << 0.25, 0.05, 0.05, 0.75;
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b(0, 0) = 0.5;
  b(1, 1) = 0.3;
  b(2, 2) = 0.2;
  DensityMatrix rho(kron(a, b), {2, 3});
  CHECK(approx_equal(partial_trace(rho, {0}).matrix(), a, 1e-12));
  CHECK(approx_equal(partial_trace(rho, {1}).matrix(), b, 1e-12));
}

TEST_CASE("propagator diagonal and identity cases") {
  ComplexMatrix u = herm_propagator(pauli_z(), M_PI / 2);
  ComplexMatrix want = ComplexMatrix::Zero(2, 2);
  want(0, 0) = Complex(0, -1);
  want(1, 1) = Complex(0, 1);
  CHECK(approx_equal(u, want, 1e-12));

  std::mt19937_64 rng(3);
  CHECK(approx_equal(herm_propagator(oracles::random_hermitian(rng, 4, 1.0), 0.0),
                     identity(4), 1e-12));
  CHECK_THROWS_AS(herm_propagator(pauli_x() + Complex(0, 1) * identity(2), 1.0),
                  std::invalid_argument);
}

TEST_CASE("propagator swaps the single-excitation block at g t = pi/2") {
  double g = 0.8;
  ComplexMatrix h =
      0.5 * g *
      (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()));
  double t = M_PI / (2 * g);
  ComplexMatrix u = herm_propagator(h, t);

  // |01> -> -i|10>, |10> -> -i|01>, |00>/|11> untouched.
  CHECK(std::abs(u(2, 1) - Complex(0, -1)) < 1e-10);
  CHECK(std::abs(u(1, 2) - Complex(0, -1)) < 1e-10);
  CHECK(std::abs(u(1, 1)) < 1e-10);
  CHECK(std::abs(u(0, 0) - Complex(1, 0)) < 1e-10);
  CHECK(std::abs(u(3, 3) - Complex(1, 0)) < 1e-10);

  CHECK((u - oracles::expm_taylor(Complex(0, -t) * h)).norm() < 1e-10);
}

TEST_CASE("propagator is unitary and matches the Taylor oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tdist(0.1, 2.0);
  for (int it = 0; it < 30; ++it) {
    ComplexMatrix h = oracles::random_hermitian(rng, 4, 1.0);
    double t = tdist(rng);  // ||h t|| <= 2
    ComplexMatrix u = herm_propagator(h, t);
    CHECK(is_unitary(u, 1e-10));
    CHECK((u - oracles::expm_taylor(Complex(0, -t) * h)).norm() < 1e-8);
  }
}

TEST_CASE("entropy values in nats") {
  CHECK(von_neumann_entropy(DensityMatrix::basis({2}, 0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed({2})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  double p = 0.1330, q = 0.8670;
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = q;
  double scalar = -(p * std::log(p) + q * std::log(q));
  CHECK(von_neumann_entropy(DensityMatrix(m, {2})) ==
        doctest::Approx(scalar).epsilon(1e-12));
}

TEST_CASE("entropy is invariant under unitary conjugation") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 20; ++it) {
    DensityMatrix rho = oracles::random_density(rng, {2, 2});
    ComplexMatrix u = oracles::random_unitary(rng, 4);
    DensityMatrix rotated(u * rho.matrix() * u.adjoint(), {2, 2});
    CHECK(std::abs(von_neumann_entropy(rho) - von_neumann_entropy(rotated)) <
          1e-10);
  }
}

TEST_CASE("expectation values") {
  CHECK(expectation(DensityMatrix::basis({2}, 0), pauli_z()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation(DensityMatrix::maximally_mixed({2}), pauli_z()) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Gibbs(omega = 0.75, T = 0.4): <sigma_z> = p0 - p1 = -tanh(omega/(2T)).
  auto pops = oracles::two_level_gibbs(0.75, 0.4);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = pops.p0;
  m(1, 1) = pops.p1;
  double want = -std::tanh(0.75 / (2 * 0.4));
  CHECK(expectation(DensityMatrix(m, {2}), pauli_z()) ==
        doctest::Approx(want).epsilon(1e-12));

  CHECK_THROWS_AS(expectation(DensityMatrix::maximally_mixed({2, 2}),
                              pauli_z()),
                  std::invalid_argument);
}

TEST_CASE("trace distance values") {
  DensityMatrix zero = DensityMatrix::basis({2}, 0);
  DensityMatrix one = DensityMatrix::basis({2}, 1);
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 0.6;
  a(1, 1) = 0.4;
  CHECK(trace_distance(DensityMatrix(a, {2}), DensityMatrix::maximally_mixed(
                                                  {2})) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(trace_distance(zero, DensityMatrix::maximally_mixed({2, 2})),
                  std::invalid_argument);
}

TEST_CASE("trace distance is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    DensityMatrix a = oracles::random_density(rng, {2, 2});
    DensityMatrix b = oracles::random_density(rng, {2, 2});
    DensityMatrix c = oracles::random_density(rng, {2, 2});
    double ab = trace_distance(a, b);
    double ba = trace_distance(b, a);
    CHECK(std::abs(ab - ba) < 1e-10);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
  }
}
