// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twostroke {

namespace {

constexpr double kHermTol = 1e-10;

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * dims[i + 1];
  }
  return strides;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return solver.eigenvalues();
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix identity(int dim) {
  return ComplexMatrix::Identity(dim, dim);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return ((a - b).cwiseAbs().maxCoeff()) <= tol;
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix delta = m * m.adjoint() - identity(static_cast<int>(m.rows()));
  return delta.cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<int> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if (dims_.empty()) {
    throw std::invalid_argument("density matrix needs at least one subsystem");
  }
  long long prod = 1;
  for (int d : dims_) {
    if (d < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
    prod *= d;
  }
  if (prod != matrix_.rows()) {
    throw std::invalid_argument(
        "product of subsystem dimensions does not match matrix size");
  }
  if (!is_hermitian(matrix_, kHermTol)) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1, 0)) > kHermTol) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  if (hermitian_eigenvalues(matrix_).minCoeff() < -kHermTol) {
    throw std::invalid_argument("density matrix must be positive semidefinite");
  }
}

DensityMatrix DensityMatrix::with_dims(std::vector<int> dims) const {
  return DensityMatrix(matrix_, std::move(dims));
}

DensityMatrix DensityMatrix::basis(std::vector<int> dims, int index) {
  long long prod = 1;
  for (int d : dims) prod *= d;
  if (index < 0 || index >= prod) {
    throw std::invalid_argument("basis index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(prod, prod);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi,
                                  std::vector<int> dims) {
  double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("zero state vector");
  ComplexVector unit = psi / norm;
  ComplexMatrix m = unit * unit.adjoint();
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<int> dims) {
  long long prod = 1;
  for (int d : dims) prod *= d;
  ComplexMatrix m =
      ComplexMatrix::Identity(prod, prod) / static_cast<double>(prod);
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const std::vector<int>& dims = rho.dims();
  const int n = static_cast<int>(dims.size());

  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) throw std::invalid_argument("keep set must be nonempty");
  for (int k : kept) {
    if (k < 0 || k >= n) {
      throw std::invalid_argument("keep index " + std::to_string(k) +
                                  " out of range");
    }
  }

  std::vector<int> traced;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  }

  std::vector<int> strides = strides_of(dims);
  std::vector<int> kept_dims;
  int kept_dim = 1;
  for (int k : kept) {
    kept_dims.push_back(dims[k]);
    kept_dim *= dims[k];
  }
  int traced_dim = 1;
  for (int t : traced) traced_dim *= dims[t];

  // Flat offsets of every kept / traced multi-index in the full space.
  auto offsets = [&](const std::vector<int>& subsys) {
    std::vector<int> offs(1, 0);
    for (int s : subsys) {
      std::vector<int> next;
      next.reserve(offs.size() * dims[s]);
      for (int base : offs) {
        for (int v = 0; v < dims[s]; ++v) next.push_back(base + v * strides[s]);
      }
      offs = std::move(next);
    }
    return offs;
  };
  std::vector<int> kept_offs = offsets(kept);
  std::vector<int> traced_offs = offsets(traced);

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (int a = 0; a < kept_dim; ++a) {
    for (int b = 0; b < kept_dim; ++b) {
      Complex sum(0, 0);
      for (int t = 0; t < traced_dim; ++t) {
        sum += m(kept_offs[a] + traced_offs[t], kept_offs[b] + traced_offs[t]);
      }
      out(a, b) = sum;
    }
  }
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

ComplexMatrix herm_propagator(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h, kHermTol)) {
    throw std::invalid_argument("propagator requires a Hermitian generator");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  ComplexVector phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    phases(i) = std::exp(Complex(0, -evals(i) * t));
  }
  ComplexMatrix v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::VectorXd evals = hermitian_eigenvalues(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    double p = evals(i);
    if (std::abs(p) <= 1e-10) continue;  // 0 ln 0 := 0
    s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
    throw std::invalid_argument("observable dimension mismatch");
  }
  if (!is_hermitian(obs, kHermTol)) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  Complex tr = (obs * rho.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-10) {
    throw std::runtime_error("expectation value has a non-real residue");
  }
  return tr.real();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) {
    throw std::invalid_argument("trace distance requires matching dims");
  }
  Eigen::VectorXd evals = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  return 0.5 * evals.cwiseAbs().sum();
}

}  // namespace twostroke
