// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/vqt.hpp"

#include <cmath>
#include <stdexcept>

#include "twostroke/optim.hpp"

namespace twostroke {

namespace {

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
  return s;
}

// splitmix64 step: decorrelates per-evaluation shot seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double branch_energy(const ComplexMatrix& h, const ComplexMatrix& u, int basis,
                     const EnergyEvaluator& evaluator, std::uint64_t salt) {
  if (evaluator.kind == EnergyEvaluator::Kind::Exact) {
    return (u.adjoint() * h * u)(basis, basis).real();
  }
  // One z-basis measurement per branch; requires a sigma_z-diagonal h.
  if (std::abs(h(0, 1)) > 1e-12 || std::abs(h(1, 0)) > 1e-12) {
    throw std::invalid_argument(
        "shot evaluator supports sigma_z-diagonal Hamiltonians only");
  }
  double offset = 0.5 * (h(0, 0).real() + h(1, 1).real());
  double weight = 0.5 * (h(0, 0).real() - h(1, 1).real());
  ComplexVector psi = u.col(basis);
  DensityMatrix rho = DensityMatrix::pure(psi, {2});
  ShotEstimate est = sample_sigma_z(rho, 0, evaluator.shots,
                                    mix_seed(evaluator.seed, salt));
  return offset + weight * est.mean;
}

}  // namespace

double LatentDistribution::p() const { return 1.0 / (1.0 + std::exp(-theta)); }

DensityMatrix latent_state(const LatentDistribution& dist) {
  if (!std::isfinite(dist.theta)) {
    throw std::invalid_argument("latent parameter must be finite");
  }
  double p = dist.p();
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return DensityMatrix(std::move(m), {2});
}

Circuit VqtAnsatz::circuit() const {
  Circuit c(1);
  c.rz(0, phi[0]).sx(0).rz(0, phi[1]).sx(0).rz(0, phi[2]);
  return c;
}

ComplexMatrix VqtAnsatz::unitary() const { return circuit_unitary(circuit()); }

double vqt_loss(double theta, const std::array<double, 3>& phi,
                const ComplexMatrix& h, double beta,
                const EnergyEvaluator& evaluator) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (h.rows() != 2 || h.cols() != 2 || !is_hermitian(h)) {
    throw std::invalid_argument("loss requires a 2x2 Hermitian Hamiltonian");
  }
  double p = LatentDistribution{theta}.p();
  ComplexMatrix u = VqtAnsatz{phi}.unitary();
  double e0 = branch_energy(h, u, 0, evaluator, 0);
  double e1 = branch_energy(h, u, 1, evaluator, 1);
  return beta * (p * e0 + (1.0 - p) * e1) - binary_entropy(p);
}

double log_partition(const ComplexMatrix& h, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h,
                                                      Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  double e0 = evals.minCoeff();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    sum += std::exp(-beta * (evals(i) - e0));
  }
  return std::log(sum) - beta * e0;
}

VqtResult optimize(const ComplexMatrix& h, double beta, const VqtInit& init,
                   int budget, double tol, const EnergyEvaluator& evaluator) {
  // Fixed per-evaluation seed schedule keeps sampled runs reproducible.
  std::uint64_t eval_counter = 0;
  Objective objective = [&](const std::vector<double>& x) {
    EnergyEvaluator ev = evaluator;
    if (ev.kind == EnergyEvaluator::Kind::Shots) {
      ev.seed = mix_seed(evaluator.seed, ++eval_counter);
    }
    return vqt_loss(x[0], {x[1], x[2], x[3]}, h, beta, ev);
  };

  MinimizeResult min;
  if (budget < 1) {
    // Exhausted budget: report the initial point, never converged.
    min.x = {init.theta, init.phi[0], init.phi[1], init.phi[2]};
    min.value = objective(min.x);
    min.best_trace = {min.value};
  } else {
    MinimizeOptions opts;
    opts.max_iterations = budget;
    opts.tol = tol;
    opts.initial_step = 0.6;
    min = nelder_mead(
        objective, {init.theta, init.phi[0], init.phi[1], init.phi[2]}, opts);
  }

  VqtAnsatz ansatz{{min.x[1], min.x[2], min.x[3]}};
  ComplexMatrix u = ansatz.unitary();
  DensityMatrix latent = latent_state({min.x[0]});
  DensityMatrix prepared(u * latent.matrix() * u.adjoint(),
                         std::vector<int>{2});

  bool converged = min.converged;
  if (evaluator.kind == EnergyEvaluator::Kind::Exact) {
    converged = (min.value - (-log_partition(h, beta))) < 1e-3;
  }
  if (budget < 1) converged = false;
  return VqtResult{min.x[0],
                   ansatz.phi,
                   std::move(min.best_trace),
                   std::move(prepared),
                   min.iterations,
                   converged};
}

std::vector<BathBranch> latent_branches(const VqtResult& result) {
  double p = LatentDistribution{result.theta_opt}.p();
  ComplexMatrix u = VqtAnsatz{result.phi_opt}.unitary();
  std::vector<BathBranch> branches;
  for (int basis = 0; basis < 2; ++basis) {
    ComplexVector psi = u.col(basis);
    branches.push_back(BathBranch{basis == 0 ? p : 1.0 - p, basis,
                                  DensityMatrix::pure(psi, {2})});
  }
  return branches;
}

BathPair prepare_bath_pair(const VqtResult& cold, const VqtResult& hot) {
  return BathPair{tensor(cold.prepared_state, hot.prepared_state),
                  latent_branches(cold), latent_branches(hot)};
}

}  // namespace twostroke
