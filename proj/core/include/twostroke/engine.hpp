// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "twostroke/circuit.hpp"
#include "twostroke/model.hpp"
#include "twostroke/vqt.hpp"

namespace twostroke {

enum class ExecutionMode {
  Exact,    // dense exp(-iHt) propagators
  Circuit,  // stroke circuits (single-step factorization by default)
  Shots,    // circuit evolution + finite-shot sigma_z readout
};

enum class Mode { HeatEngine, Refrigerator, Accelerator, Other };
const char* mode_name(Mode mode);

struct BathPrepConfig {
  enum class Kind { ExactGibbs, Vqt };
  Kind kind = Kind::ExactGibbs;
  std::optional<VqtResult> cold;  // required for Kind::Vqt
  std::optional<VqtResult> hot;
};

struct EngineConfig {
  ChainSpec spec;
  double tau_q = 0.0;
  double tau_w = 0.0;
  int n_cycles = 1;
  ExecutionMode execution = ExecutionMode::Exact;
  int shots = 8192;
  std::uint64_t seed = 0;
  BathPrepConfig bath_prep;
  // Defaults to the ground state |1...1> of the +w/2 sigma_z sites.
  std::optional<DensityMatrix> initial_chain_state;
  int steps_per_stroke = 1;  // Trotter slices per stroke in circuit mode
  bool four_branch = false;  // evolve the four latent bath branches separately

  void validate() const;
};

struct SigmaZRecord {
  double value = 0.0;
  double err = 0.0;  // standard error when sampled, 0 otherwise
};

struct CycleRecord {
  int cycle = 0;  // 1-based
  double q_cold = 0.0, q_hot = 0.0, work = 0.0;
  double dv_cold = 0.0, dv_hot = 0.0;          // interaction-energy jumps
  double q_cold_bath = 0.0, q_hot_bath = 0.0;  // bath-side heats
  double cum_q_cold = 0.0, cum_q_hot = 0.0, cum_work = 0.0;
  std::vector<SigmaZRecord> sz_pre, sz_mid, sz_post;  // per chain site
  double err_q_cold = 0.0, err_q_hot = 0.0, err_work = 0.0;
};

struct CycleLedger {
  std::vector<CycleRecord> cycles;
};

struct RunResult {
  std::vector<DensityMatrix> chain_states;  // cycle-start states, n_cycles + 1
  std::vector<DensityMatrix> mid_states;    // post-heat-stroke states
  CycleLedger ledger;
};

/// Runs the stroboscopic dynamics: attach fresh bath states, heat stroke,
/// record, trace out baths, work stroke, record. Heats follow the recorded
/// site sigma_z values; bath-side heats and interaction jumps are kept
/// alongside for the bookkeeping identities.
RunResult run_cycles(const EngineConfig& cfg);

/// Q_x = -Tr{H_x (rho_post_x - rho_pre_x)} for the two bath qubits of
/// states over (C, 1..N, H).
std::pair<double, double> bath_side_heat(const DensityMatrix& global_pre,
                                         const DensityMatrix& global_post,
                                         const ChainSpec& spec);

/// Switching work (-dV_C, -dV_H) with dV_x = Tr{V_x (rho_post - rho_pre)};
/// identically zero under strict energy conservation.
std::pair<double, double> onoff_work(const DensityMatrix& global_pre,
                                     const DensityMatrix& global_post,
                                     const ChainSpec& spec);

struct LimitCycleReport {
  bool reached = false;
  int cycle_index = 0;
  double q_cold_star = 0.0, q_hot_star = 0.0, work_star = 0.0;
  double first_law_residual = 0.0;  // |Q*_C + Q*_H - W*|
  Mode mode = Mode::Other;          // sign pattern of the final cycle
};

/// Limit cycle is declared when two successive cycle-start states are
/// within tol in trace distance; energetics come from the final cycle.
/// Needs at least two executed cycles, otherwise reports not-reached.
LimitCycleReport detect_limit_cycle(const RunResult& result, double tol);

/// Predicted operating mode from the frequency and temperature ratios
/// (N = 2 machines only). Ratio boundaries classify as Other.
Mode classify_mode(const ChainSpec& spec);

/// True when the report's limit-cycle heat/work signs match the predicted
/// mode's pattern (dead band 1e-9). Requires report.reached.
bool verify_mode(const LimitCycleReport& report, Mode predicted);

// CSV columns: cycle, q_cold, q_hot, work, q_sum, dv_cold, dv_hot,
// sz1_pre, sz1_mid, sz2_pre, sz2_mid, err_q_cold, err_q_hot, err_work.
// The sz columns carry the first and last chain site.
void write_ledger_csv(const CycleLedger& ledger, std::ostream& out);

}  // namespace twostroke
