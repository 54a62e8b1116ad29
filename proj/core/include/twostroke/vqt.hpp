// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "twostroke/circuit.hpp"
#include "twostroke/qmath.hpp"

namespace twostroke {

// Classical latent distribution over the computational basis of one qubit:
// p(theta) = 1 / (1 + e^-theta).
struct LatentDistribution {
  double theta = 0.0;
  double p() const;
};

/// diag(p(theta), 1 - p(theta)).
DensityMatrix latent_state(const LatentDistribution& dist);

// Fixed single-qubit ansatz: RZ(phi0) . SX . RZ(phi1) . SX . RZ(phi2),
// expressive enough for any 1-qubit unitary up to phase.
struct VqtAnsatz {
  std::array<double, 3> phi{};
  Circuit circuit() const;
  ComplexMatrix unitary() const;
};

struct EnergyEvaluator {
  enum class Kind { Exact, Shots };
  Kind kind = Kind::Exact;
  int shots = 8192;
  std::uint64_t seed = 0;

  static EnergyEvaluator exact() { return {}; }
  static EnergyEvaluator sampled(int shots, std::uint64_t seed) {
    return {Kind::Shots, shots, seed};
  }
};

/// Free-energy loss beta <H>_(theta,phi) - S(p(theta)). The entropy term is
/// computed classically from the latent parameters; only the energy is
/// evaluated on the state, so the shot evaluator needs one z-basis
/// measurement per latent branch (h must be sigma_z-diagonal for that).
double vqt_loss(double theta, const std::array<double, 3>& phi,
                const ComplexMatrix& h, double beta,
                const EnergyEvaluator& evaluator = {});

struct VqtInit {
  double theta = 0.0;
  // Nonzero default breaks the phi-stationary symmetry at phi = 0.
  std::array<double, 3> phi{0.1, 0.1, 0.1};
};

struct VqtResult {
  double theta_opt = 0.0;
  std::array<double, 3> phi_opt{};
  std::vector<double> loss_trace;  // best-so-far, one entry per iteration
  DensityMatrix prepared_state;    // U(phi) rho_theta U~(phi)
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free minimization of vqt_loss over (theta, phi). With the
/// exact evaluator, converged means the final loss is within 1e-3 of the
/// free-energy minimum -ln Z_beta; non-convergence is reported, not thrown.
VqtResult optimize(const ComplexMatrix& h, double beta, const VqtInit& init,
                   int budget, double tol,
                   const EnergyEvaluator& evaluator = {});

/// ln Tr exp(-beta h), evaluated stably from the spectrum.
double log_partition(const ComplexMatrix& h, double beta);

struct BathBranch {
  double weight;
  int basis_state;      // latent basis index the branch starts from
  DensityMatrix pure;   // U |basis><basis| U~
};

struct BathPair {
  DensityMatrix state;              // rho_C (x) rho_H over (C, H), dims {2,2}
  std::vector<BathBranch> cold;     // latent decomposition of the cold state
  std::vector<BathBranch> hot;
};

/// Latent decomposition of one prepared bath: weights (p, 1-p) on the
/// ansatz-rotated basis states; recombines exactly to prepared_state.
std::vector<BathBranch> latent_branches(const VqtResult& result);

/// Product state of the two optimized baths plus the four-branch latent
/// decomposition (weights p_C p_H over the two-qubit basis).
BathPair prepare_bath_pair(const VqtResult& cold, const VqtResult& hot);

}  // namespace twostroke
