// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace twostroke {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Everything in this library lives in
// Hilbert spaces of dimension <= 16, so no sparse machinery.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity(int dim);

/// Elementwise comparison with an absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = 1e-12);

double frobenius_norm(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor (Kronecker) product, row-major convention: the left factor
/// indexes the slow (most significant) subsystem.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// A density matrix tagged with its subsystem dimensions. Construction
// validates Hermiticity (1e-10), unit trace (1e-10) and positivity
// (eigenvalues >= -1e-10); operations that return density matrices keep
// these invariants.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<int> dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

  /// Same state over a different subsystem split (total dimension must match).
  DensityMatrix with_dims(std::vector<int> dims) const;

  /// Pure computational-basis state |index><index| over the given dims.
  static DensityMatrix basis(std::vector<int> dims, int index);
  /// Projector onto an arbitrary (normalized internally) state vector.
  static DensityMatrix pure(const ComplexVector& psi, std::vector<int> dims);
  static DensityMatrix maximally_mixed(std::vector<int> dims);

 private:
  ComplexMatrix matrix_;
  std::vector<int> dims_;
};

/// rho_a tensor rho_b; dims concatenate in order.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state over the kept subsystems, in their original order.
/// Trace is preserved. Throws std::invalid_argument on bad indices.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// U = exp(-i h t) for Hermitian h, via eigendecomposition (hbar = 1).
ComplexMatrix herm_propagator(const ComplexMatrix& h, double t);

/// Von Neumann entropy in nats (natural log; k_B = 1 throughout the
/// library). Eigenvalues within 1e-10 of zero are clamped before the log.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr(obs * rho) for a Hermitian observable. The imaginary residue must be
/// below 1e-10 and is discarded.
double expectation(const DensityMatrix& rho, const ComplexMatrix& obs);

/// (1/2) sum |eig(rho - sigma)|, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace twostroke
