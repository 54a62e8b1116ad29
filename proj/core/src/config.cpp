// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace twostroke {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
  size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
  if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
  return out;
}

long long parse_int(const std::string& v, int line) {
  size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + v + "'");
  }
  if (used != v.size()) fail(line, "trailing characters in '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::string normalized = v;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_double(token, line));
  if (out.empty()) fail(line, "expected a list of numbers");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

const char* execution_mode_name(ExecutionMode mode) {
  switch (mode) {
    case ExecutionMode::Exact: return "exact";
    case ExecutionMode::Circuit: return "circuit";
    case ExecutionMode::Shots: return "shots";
  }
  return "?";
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;

  using Handler = std::function<void(const std::string&, int)>;
  std::map<std::string, Handler> handlers;

  auto on_double = [&](const char* key, double* dst) {
    handlers[key] = [dst](const std::string& v, int line) {
      *dst = parse_double(v, line);
    };
  };
  auto on_int = [&](const char* key, int* dst) {
    handlers[key] = [dst](const std::string& v, int line) {
      *dst = static_cast<int>(parse_int(v, line));
    };
  };
  auto on_bool = [&](const char* key, bool* dst) {
    handlers[key] = [dst](const std::string& v, int line) {
      *dst = parse_bool(v, line);
    };
  };
  auto on_list = [&](const char* key, std::vector<double>* dst) {
    handlers[key] = [dst](const std::string& v, int line) {
      *dst = parse_list(v, line);
    };
  };

  on_int("chain.n_sites", &cfg.spec.n_sites);
  on_list("chain.omegas", &cfg.spec.omegas);
  on_double("chain.omega_c", &cfg.spec.omega_c);
  on_double("chain.omega_h", &cfg.spec.omega_h);
  on_list("chain.g_work", &cfg.spec.g_work);
  on_double("chain.g_c", &cfg.spec.g_c);
  on_double("chain.g_h", &cfg.spec.g_h);
  on_double("chain.t_cold", &cfg.spec.t_cold);
  on_double("chain.t_hot", &cfg.spec.t_hot);

  on_double("engine.tau_q", &cfg.tau_q);
  on_double("engine.tau_w", &cfg.tau_w);
  on_int("engine.n_cycles", &cfg.n_cycles);
  handlers["engine.execution"] = [&cfg](const std::string& v, int line) {
    if (v == "exact") cfg.execution = ExecutionMode::Exact;
    else if (v == "circuit") cfg.execution = ExecutionMode::Circuit;
    else if (v == "shots") cfg.execution = ExecutionMode::Shots;
    else fail(line, "execution must be exact, circuit or shots");
  };
  on_int("engine.shots", &cfg.shots);
  on_int("engine.repetitions", &cfg.repetitions);
  handlers["engine.seed"] = [&cfg](const std::string& v, int line) {
    cfg.seed = static_cast<std::uint64_t>(parse_int(v, line));
  };
  handlers["engine.bath_prep"] = [&cfg](const std::string& v, int line) {
    if (v == "exact_gibbs") cfg.bath_prep = BathPrepConfig::Kind::ExactGibbs;
    else if (v == "vqt") cfg.bath_prep = BathPrepConfig::Kind::Vqt;
    else fail(line, "bath_prep must be exact_gibbs or vqt");
  };
  handlers["engine.initial_state"] = [&cfg](const std::string& v, int line) {
    if (v != "ground" && v != "zero" && v != "mixed") {
      fail(line, "initial_state must be ground, zero or mixed");
    }
    cfg.initial_state = v;
  };
  on_int("engine.steps_per_stroke", &cfg.steps_per_stroke);
  on_bool("engine.four_branch", &cfg.four_branch);
  on_double("engine.limit_cycle_tol", &cfg.limit_cycle_tol);

  on_int("vqt.max_iterations", &cfg.vqt_max_iterations);
  on_double("vqt.tol", &cfg.vqt_tol);
  handlers["vqt.evaluator"] = [&cfg](const std::string& v, int line) {
    if (v == "exact") cfg.vqt_evaluator = EnergyEvaluator::Kind::Exact;
    else if (v == "shots") cfg.vqt_evaluator = EnergyEvaluator::Kind::Shots;
    else fail(line, "evaluator must be exact or shots");
  };

  on_list("modes.omega_ratios", &cfg.mode_omega_ratios);
  on_list("modes.temp_ratios", &cfg.mode_temp_ratios);
  on_double("modes.omega2", &cfg.mode_omega2);
  on_double("modes.t_hot", &cfg.mode_t_hot);
  on_double("modes.g", &cfg.mode_g);
  on_list("modes.g_taus", &cfg.mode_g_taus);
  on_int("modes.n_cycles", &cfg.mode_n_cycles);
  on_bool("modes.verify", &cfg.mode_verify);

  handlers["output.out_dir"] = [&cfg](const std::string& v, int) {
    cfg.out_dir = v;
  };

  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "chain" && section != "engine" && section != "vqt" &&
          section != "modes" && section != "output") {
        fail(line_no, "unknown section '" + section + "'");
      }
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key outside any section");
    if (key.empty() || value.empty()) fail(line_no, "empty key or value");

    auto it = handlers.find(section + "." + key);
    if (it == handlers.end()) {
      fail(line_no, "unknown key '" + section + "." + key + "'");
    }
    it->second(value, line_no);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_run_config(in);
}

std::string serialize_run_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[chain]\n";
  out << "n_sites = " << cfg.spec.n_sites << "\n";
  out << "omegas = " << format_list(cfg.spec.omegas) << "\n";
  out << "omega_c = " << format_double(cfg.spec.omega_c) << "\n";
  out << "omega_h = " << format_double(cfg.spec.omega_h) << "\n";
  out << "g_work = " << format_list(cfg.spec.g_work) << "\n";
  out << "g_c = " << format_double(cfg.spec.g_c) << "\n";
  out << "g_h = " << format_double(cfg.spec.g_h) << "\n";
  out << "t_cold = " << format_double(cfg.spec.t_cold) << "\n";
  out << "t_hot = " << format_double(cfg.spec.t_hot) << "\n";
  out << "\n[engine]\n";
  out << "tau_q = " << format_double(cfg.tau_q) << "\n";
  out << "tau_w = " << format_double(cfg.tau_w) << "\n";
  out << "n_cycles = " << cfg.n_cycles << "\n";
  out << "execution = " << execution_mode_name(cfg.execution) << "\n";
  out << "shots = " << cfg.shots << "\n";
  out << "repetitions = " << cfg.repetitions << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "bath_prep = "
      << (cfg.bath_prep == BathPrepConfig::Kind::Vqt ? "vqt" : "exact_gibbs")
      << "\n";
  out << "initial_state = " << cfg.initial_state << "\n";
  out << "steps_per_stroke = " << cfg.steps_per_stroke << "\n";
  out << "four_branch = " << (cfg.four_branch ? "true" : "false") << "\n";
  out << "limit_cycle_tol = " << format_double(cfg.limit_cycle_tol) << "\n";
  out << "\n[vqt]\n";
  out << "max_iterations = " << cfg.vqt_max_iterations << "\n";
  out << "tol = " << format_double(cfg.vqt_tol) << "\n";
  out << "evaluator = "
      << (cfg.vqt_evaluator == EnergyEvaluator::Kind::Shots ? "shots"
                                                            : "exact")
      << "\n";
  out << "\n[modes]\n";
  out << "omega_ratios = " << format_list(cfg.mode_omega_ratios) << "\n";
  out << "temp_ratios = " << format_list(cfg.mode_temp_ratios) << "\n";
  out << "omega2 = " << format_double(cfg.mode_omega2) << "\n";
  out << "t_hot = " << format_double(cfg.mode_t_hot) << "\n";
  out << "g = " << format_double(cfg.mode_g) << "\n";
  out << "g_taus = " << format_list(cfg.mode_g_taus) << "\n";
  out << "n_cycles = " << cfg.mode_n_cycles << "\n";
  out << "verify = " << (cfg.mode_verify ? "true" : "false") << "\n";
  out << "\n[output]\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  return out.str();
}

EngineConfig to_engine_config(const RunConfig& cfg) {
  EngineConfig engine;
  engine.spec = cfg.spec;
  engine.tau_q = cfg.tau_q;
  engine.tau_w = cfg.tau_w;
  engine.n_cycles = cfg.n_cycles;
  engine.execution = cfg.execution;
  engine.shots = cfg.shots;
  engine.seed = cfg.seed;
  engine.bath_prep.kind = cfg.bath_prep;
  engine.steps_per_stroke = cfg.steps_per_stroke;
  engine.four_branch = cfg.four_branch;

  const int n = cfg.spec.n_sites;
  std::vector<int> dims(n, 2);
  if (cfg.initial_state == "ground") {
    engine.initial_chain_state = DensityMatrix::basis(dims, (1 << n) - 1);
  } else if (cfg.initial_state == "zero") {
    engine.initial_chain_state = DensityMatrix::basis(dims, 0);
  } else if (cfg.initial_state == "mixed") {
    engine.initial_chain_state = DensityMatrix::maximally_mixed(dims);
  } else {
    throw ConfigError("unknown initial_state '" + cfg.initial_state + "'");
  }
  return engine;
}

}  // namespace twostroke
