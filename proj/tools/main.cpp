// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: engine runs, VQT bath training, circuit
// transpilation, and operation-mode sweeps. Exit codes: 0 success,
// 2 configuration/parse error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "twostroke/config.hpp"
#include "twostroke/transpile.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace twostroke;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  std::optional<int> cycles;
  std::optional<std::string> execution;
  std::optional<std::string> out_dir;
};

RunConfig resolve_config(const CommonFlags& flags) {
  RunConfig cfg = flags.config_path.empty()
                      ? RunConfig{}
                      : load_run_config(flags.config_path);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.shots) cfg.shots = *flags.shots;
  if (flags.cycles) cfg.n_cycles = *flags.cycles;
  if (flags.execution) {
    if (*flags.execution == "exact") cfg.execution = ExecutionMode::Exact;
    else if (*flags.execution == "circuit") cfg.execution = ExecutionMode::Circuit;
    else if (*flags.execution == "shots") cfg.execution = ExecutionMode::Shots;
    else throw ConfigError("--execution must be exact, circuit or shots");
  }
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

EnergyEvaluator vqt_evaluator(const RunConfig& cfg, std::uint64_t salt) {
  if (cfg.vqt_evaluator == EnergyEvaluator::Kind::Shots) {
    return EnergyEvaluator::sampled(cfg.shots, cfg.seed ^ salt);
  }
  return EnergyEvaluator::exact();
}

struct TrainedBath {
  VqtResult result;
  double omega;
  double temperature;
  double distance_to_gibbs;
};

TrainedBath train_bath(const RunConfig& cfg, double omega, double temperature,
                       std::uint64_t salt) {
  ComplexMatrix h = local_hamiltonian(omega);
  VqtResult result = optimize(h, 1.0 / temperature, VqtInit{},
                              cfg.vqt_max_iterations, cfg.vqt_tol,
                              vqt_evaluator(cfg, salt));
  double distance =
      trace_distance(result.prepared_state, gibbs_state(h, temperature));
  return {std::move(result), omega, temperature, distance};
}

json bath_to_json(const char* name, const TrainedBath& bath) {
  json j;
  j["bath"] = name;
  j["omega"] = bath.omega;
  j["temperature"] = bath.temperature;
  j["beta"] = 1.0 / bath.temperature;
  j["theta"] = bath.result.theta_opt;
  j["phi"] = bath.result.phi_opt;
  j["iterations"] = bath.result.iterations;
  j["converged"] = bath.result.converged;
  j["loss_final"] = bath.result.loss_trace.back();
  j["free_energy_minimum"] =
      -log_partition(local_hamiltonian(bath.omega), 1.0 / bath.temperature);
  j["trace_distance_to_gibbs"] = bath.distance_to_gibbs;
  j["loss_trace"] = bath.result.loss_trace;
  return j;
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0));
}

// Mean ledger over repetitions; err columns become three standard
// deviations of the per-repetition values (the plotting convention).
CycleLedger aggregate_ledgers(const std::vector<RunResult>& runs) {
  if (runs.size() == 1) return runs.front().ledger;
  const size_t reps = runs.size();
  const size_t cycles = runs.front().ledger.cycles.size();
  CycleLedger out;
  for (size_t c = 0; c < cycles; ++c) {
    CycleRecord agg = runs.front().ledger.cycles[c];
    auto collect = [&](auto get) {
      std::vector<double> xs(reps);
      for (size_t r = 0; r < reps; ++r) {
        xs[r] = get(runs[r].ledger.cycles[c]);
      }
      double mean = 0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(reps);
      return std::pair<double, double>(mean, sample_std(xs, mean));
    };
    auto [qc, qc_sd] = collect([](const CycleRecord& r) { return r.q_cold; });
    auto [qh, qh_sd] = collect([](const CycleRecord& r) { return r.q_hot; });
    auto [w, w_sd] = collect([](const CycleRecord& r) { return r.work; });
    agg.q_cold = qc;
    agg.q_hot = qh;
    agg.work = w;
    agg.err_q_cold = 3.0 * qc_sd;
    agg.err_q_hot = 3.0 * qh_sd;
    agg.err_work = 3.0 * w_sd;
    for (size_t s = 0; s < agg.sz_pre.size(); ++s) {
      auto [pre, pre_sd] = collect(
          [s](const CycleRecord& r) { return r.sz_pre[s].value; });
      auto [mid, mid_sd] = collect(
          [s](const CycleRecord& r) { return r.sz_mid[s].value; });
      agg.sz_pre[s] = {pre, pre_sd};
      agg.sz_mid[s] = {mid, mid_sd};
    }
    out.cycles.push_back(std::move(agg));
  }
  // Rebuild the cumulative sums from the aggregated records.
  double cq = 0, ch = 0, cw = 0;
  for (CycleRecord& rec : out.cycles) {
    cq += rec.q_cold;
    ch += rec.q_hot;
    cw += rec.work;
    rec.cum_q_cold = cq;
    rec.cum_q_hot = ch;
    rec.cum_work = cw;
  }
  return out;
}

int do_run(const CommonFlags& flags) {
  RunConfig cfg = resolve_config(flags);
  EngineConfig engine = to_engine_config(cfg);

  json summary;
  if (cfg.bath_prep == BathPrepConfig::Kind::Vqt) {
    TrainedBath cold = train_bath(cfg, cfg.spec.omega_c, cfg.spec.t_cold, 0xc);
    TrainedBath hot = train_bath(cfg, cfg.spec.omega_h, cfg.spec.t_hot, 0x4);
    summary["vqt"] = {bath_to_json("cold", cold), bath_to_json("hot", hot)};
    engine.bath_prep.cold = std::move(cold.result);
    engine.bath_prep.hot = std::move(hot.result);
  }
  engine.validate();

  const int reps =
      engine.execution == ExecutionMode::Shots ? std::max(1, cfg.repetitions)
                                               : 1;
  std::mt19937_64 master(cfg.seed);
  std::vector<RunResult> runs;
  runs.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    EngineConfig rep = engine;
    rep.seed = master();
    runs.push_back(run_cycles(rep));
  }

  CycleLedger ledger = aggregate_ledgers(runs);
  std::vector<LimitCycleReport> reports;
  reports.reserve(reps);
  for (const RunResult& run : runs) {
    reports.push_back(detect_limit_cycle(run, cfg.limit_cycle_tol));
  }

  std::vector<double> qc, qh, w, residual;
  for (const LimitCycleReport& rep : reports) {
    qc.push_back(rep.q_cold_star);
    qh.push_back(rep.q_hot_star);
    w.push_back(rep.work_star);
    residual.push_back(rep.q_cold_star + rep.q_hot_star - rep.work_star);
  }
  auto mean_of = [](const std::vector<double>& xs) {
    double m = 0;
    for (double x : xs) m += x;
    return m / static_cast<double>(xs.size());
  };
  double qc_m = mean_of(qc), qh_m = mean_of(qh), w_m = mean_of(w);
  double res_m = mean_of(residual);
  double res_sd = sample_std(residual, res_m);

  Mode predicted = classify_mode(cfg.spec);
  const LimitCycleReport& first = reports.front();

  json limit;
  limit["reached"] = first.reached;
  limit["cycle_index"] = first.cycle_index;
  limit["q_cold_star"] = qc_m;
  limit["q_hot_star"] = qh_m;
  limit["work_star"] = w_m;
  limit["q_cold_star_3sigma"] = 3.0 * sample_std(qc, qc_m);
  limit["q_hot_star_3sigma"] = 3.0 * sample_std(qh, qh_m);
  limit["work_star_3sigma"] = 3.0 * sample_std(w, w_m);
  limit["first_law_residual"] = std::abs(res_m);
  limit["first_law_residual_3sem"] =
      3.0 * res_sd / std::sqrt(static_cast<double>(reps));
  limit["observed_mode"] = mode_name(first.mode);

  summary["execution"] = execution_mode_name(engine.execution);
  summary["repetitions"] = reps;
  summary["predicted_mode"] = mode_name(predicted);
  summary["mode_verified"] =
      first.reached ? json(verify_mode(first, predicted)) : json(nullptr);
  summary["limit_cycle"] = std::move(limit);
  summary["cumulative"] = {
      {"q_cold", ledger.cycles.back().cum_q_cold},
      {"q_hot", ledger.cycles.back().cum_q_hot},
      {"work", ledger.cycles.back().cum_work},
  };
  std::string resolved = serialize_run_config(cfg);
  summary["config"] = resolved;

  fs::create_directories(cfg.out_dir);
  std::ostringstream csv;
  write_ledger_csv(ledger, csv);
  write_text(fs::path(cfg.out_dir) / "ledger.csv", csv.str());
  write_text(fs::path(cfg.out_dir) / "summary.json", summary.dump(2) + "\n");
  write_text(fs::path(cfg.out_dir) / "resolved.cfg", resolved);

  std::cout << "mode " << mode_name(predicted) << " (observed "
            << mode_name(first.mode) << "), limit cycle "
            << (first.reached ? "reached" : "not reached") << ", Q*_C = "
            << qc_m << ", Q*_H = " << qh_m << ", W* = " << w_m
            << ", first-law residual = " << std::abs(res_m) << "\n";
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "ledger.csv").string()
            << ", summary.json, resolved.cfg\n";
  return 0;
}

int do_vqt(const CommonFlags& flags) {
  RunConfig cfg = resolve_config(flags);
  TrainedBath cold = train_bath(cfg, cfg.spec.omega_c, cfg.spec.t_cold, 0xc);
  TrainedBath hot = train_bath(cfg, cfg.spec.omega_h, cfg.spec.t_hot, 0x4);

  fs::create_directories(cfg.out_dir);
  write_text(fs::path(cfg.out_dir) / "vqt_cold.json",
             bath_to_json("cold", cold).dump(2) + "\n");
  write_text(fs::path(cfg.out_dir) / "vqt_hot.json",
             bath_to_json("hot", hot).dump(2) + "\n");

  std::cout << "cold: converged=" << (cold.result.converged ? "yes" : "no")
            << " iterations=" << cold.result.iterations
            << " distance=" << cold.distance_to_gibbs << "\n";
  std::cout << "hot:  converged=" << (hot.result.converged ? "yes" : "no")
            << " iterations=" << hot.result.iterations
            << " distance=" << hot.distance_to_gibbs << "\n";
  return 0;
}

struct TranspileFlags {
  std::string circuit_path;
  std::string topology = "0-1,1-2,2-3";
  std::string out_path;
  std::string report_path;
};

int do_transpile(const TranspileFlags& flags) {
  Circuit circuit;
  {
    std::ifstream in(flags.circuit_path);
    if (!in) throw ConfigError("cannot open circuit '" + flags.circuit_path + "'");
    try {
      circuit = read_circuit(in);
    } catch (const std::runtime_error& err) {
      throw ConfigError(flags.circuit_path + ": " + err.what());
    }
  }
  Topology topo = parse_topology(flags.topology);
  TranspiledCircuit result = transpile(circuit, topo);

  bool verifiable = !circuit.has_reset() && circuit.width() > 0;
  double distance = 0.0;
  if (verifiable) {
    std::vector<int> layout(circuit.width());
    for (int i = 0; i < circuit.width(); ++i) layout[i] = i;
    Circuit embedded = embed_circuit(circuit, layout, topo.n_qubits());
    distance =
        verify_equivalence(embedded, result.circuit, result.wire_permutation);
  }

  std::string out_path = flags.out_path.empty()
                             ? flags.circuit_path + ".transpiled"
                             : flags.out_path;
  write_text(out_path, circuit_to_string(result.circuit));

  if (!flags.report_path.empty()) {
    json report;
    report["input"] = flags.circuit_path;
    report["output"] = out_path;
    report["swap_count"] = result.swap_count;
    report["layout"] = result.layout;
    report["wire_permutation"] = result.wire_permutation;
    report["gate_count"] = result.circuit.gates().size();
    if (verifiable) report["phase_invariant_distance"] = distance;
    else report["phase_invariant_distance"] = nullptr;
    write_text(flags.report_path, report.dump(2) + "\n");
  }

  std::cout << "swap_count = " << result.swap_count << ", gates = "
            << result.circuit.gates().size() << ", distance = ";
  if (verifiable) std::cout << distance;
  else std::cout << "n/a (reset present)";
  std::cout << ", wrote " << out_path << "\n";
  return 0;
}

int do_modes(const CommonFlags& flags, std::optional<bool> verify_flag) {
  RunConfig cfg = resolve_config(flags);
  bool verify = verify_flag.value_or(cfg.mode_verify);

  std::ostringstream csv;
  csv << "omega_ratio,temp_ratio,g_tau,predicted,observed,agree\n";
  int disagreements = 0;
  for (double r : cfg.mode_omega_ratios) {
    for (double t : cfg.mode_temp_ratios) {
      if (!(t > 0.0) || t > 1.0) {
        throw ConfigError("temp ratios must lie in (0, 1]");
      }
      ChainSpec spec;
      spec.n_sites = 2;
      spec.omegas = {r * cfg.mode_omega2, cfg.mode_omega2};
      spec.omega_c = spec.omegas[0];
      spec.omega_h = spec.omegas[1];
      spec.g_work = {cfg.mode_g};
      spec.g_c = spec.g_h = cfg.mode_g;
      spec.t_hot = cfg.mode_t_hot;
      spec.t_cold = t * cfg.mode_t_hot;
      Mode predicted = classify_mode(spec);

      for (double g_tau : cfg.mode_g_taus) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,", r, t, g_tau);
        csv << buf << mode_name(predicted) << ",";
        if (!verify) {
          csv << ",\n";
          continue;
        }
        EngineConfig engine;
        engine.spec = spec;
        engine.tau_q = g_tau / cfg.mode_g;
        engine.tau_w = g_tau / cfg.mode_g;
        engine.n_cycles = cfg.mode_n_cycles;
        LimitCycleReport report =
            detect_limit_cycle(run_cycles(engine), cfg.limit_cycle_tol);
        bool agree = report.reached && verify_mode(report, predicted);
        disagreements += agree ? 0 : 1;
        csv << (report.reached ? mode_name(report.mode) : "not_reached")
            << "," << (agree ? "true" : "false") << "\n";
      }
    }
  }

  fs::create_directories(cfg.out_dir);
  write_text(fs::path(cfg.out_dir) / "modes.csv", csv.str());
  std::cout << "cells: "
            << cfg.mode_omega_ratios.size() * cfg.mode_temp_ratios.size()
            << " x " << cfg.mode_g_taus.size() << " durations";
  if (verify) std::cout << ", disagreements: " << disagreements;
  std::cout << ", wrote " << (fs::path(cfg.out_dir) / "modes.csv").string()
            << "\n";
  return disagreements == 0 ? 0 : 3;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stroboscopic two-stroke quantum heat engine simulator"};
  app.require_subcommand(1);
  int exit_code = 0;

  auto add_common = [](CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "INI config file");
    cmd->add_option("--seed", flags.seed, "seed override");
    cmd->add_option("--shots", flags.shots, "shots per expectation value");
    cmd->add_option("--cycles", flags.cycles, "number of engine cycles");
    cmd->add_option("--execution", flags.execution,
                    "exact | circuit | shots");
    cmd->add_option("--out-dir", flags.out_dir, "output directory");
  };

  CommonFlags run_flags;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run the engine and export the ledger");
  add_common(run_cmd, run_flags);
  run_cmd->callback(
      [&] { exit_code = guarded([&] { return do_run(run_flags); }); });

  CommonFlags vqt_flags;
  CLI::App* vqt_cmd =
      app.add_subcommand("vqt", "Train the thermal-state circuits");
  add_common(vqt_cmd, vqt_flags);
  vqt_cmd->callback(
      [&] { exit_code = guarded([&] { return do_vqt(vqt_flags); }); });

  TranspileFlags transpile_flags;
  CLI::App* transpile_cmd = app.add_subcommand(
      "transpile", "Lower a circuit file to the device basis");
  transpile_cmd
      ->add_option("--circuit", transpile_flags.circuit_path, "circuit file")
      ->required();
  transpile_cmd->add_option("--topology", transpile_flags.topology,
                            "edge list, e.g. 0-1,1-2,2-3");
  transpile_cmd->add_option("--out", transpile_flags.out_path,
                            "output circuit file");
  transpile_cmd->add_option("--report", transpile_flags.report_path,
                            "JSON report file");
  transpile_cmd->callback([&] {
    exit_code = guarded([&] { return do_transpile(transpile_flags); });
  });

  CommonFlags modes_flags;
  std::optional<bool> verify_flag;
  CLI::App* modes_cmd =
      app.add_subcommand("modes", "Predict and verify operation modes");
  add_common(modes_cmd, modes_flags);
  modes_cmd->add_flag("--verify,!--no-verify", verify_flag,
                      "simulate each grid cell and check the signs");
  modes_cmd->callback([&] {
    exit_code = guarded([&] { return do_modes(modes_flags, verify_flag); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}
