// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "twostroke/engine.hpp"

namespace twostroke {

/// Configuration file problem; the message carries the offending line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat INI-style configuration (sections, key = value, '#' comments).
// Unknown sections or keys are rejected. Defaults correspond to the
// two-qubit reference machine in its partial-swap setting.
struct RunConfig {
  // [chain]
  ChainSpec spec = ChainSpec::heat_engine();

  // [engine]
  // Full swap at the reference coupling g = 0.8: g * tau = pi / 2.
  double tau_q = 1.9634954084936207;
  double tau_w = 1.9634954084936207;
  int n_cycles = 20;
  ExecutionMode execution = ExecutionMode::Exact;
  int shots = 8192;
  int repetitions = 10;  // shot-mode repetitions for the error bars
  std::uint64_t seed = 20220901;
  BathPrepConfig::Kind bath_prep = BathPrepConfig::Kind::ExactGibbs;
  std::string initial_state = "ground";  // ground | zero | mixed
  int steps_per_stroke = 1;
  bool four_branch = false;
  double limit_cycle_tol = 1e-6;

  // [vqt]
  int vqt_max_iterations = 200;
  double vqt_tol = 1e-9;
  EnergyEvaluator::Kind vqt_evaluator = EnergyEvaluator::Kind::Exact;

  // [modes]
  std::vector<double> mode_omega_ratios{0.3, 0.6, 0.9, 1.2, 2.0};
  std::vector<double> mode_temp_ratios{0.25, 0.45, 0.65, 0.85, 0.95};
  double mode_omega2 = 1.0;
  double mode_t_hot = 1.0;
  double mode_g = 0.8;
  std::vector<double> mode_g_taus{1.5707963267948966, 0.8};
  int mode_n_cycles = 30;
  bool mode_verify = true;

  // [output]
  std::string out_dir = "out";
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

/// Emits every key of every section; parsing the output reproduces the
/// config exactly (doubles are written round-trip safe).
std::string serialize_run_config(const RunConfig& cfg);

/// Engine view of the config. VQT bath results are trained separately and
/// injected by the caller when bath_prep is Vqt.
EngineConfig to_engine_config(const RunConfig& cfg);

const char* execution_mode_name(ExecutionMode mode);

}  // namespace twostroke
