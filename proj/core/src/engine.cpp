// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/engine.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace twostroke {

namespace {

constexpr double kSignDeadBand = 1e-9;

std::vector<int> qubit_dims(int n) { return std::vector<int>(n, 2); }

struct BathState {
  DensityMatrix state;
  std::vector<BathBranch> branches;
};

BathState gibbs_bath(double omega, double temperature) {
  DensityMatrix rho = gibbs_state(local_hamiltonian(omega), temperature);
  double p0 = rho.matrix()(0, 0).real();
  std::vector<BathBranch> branches{
      {p0, 0, DensityMatrix::basis({2}, 0)},
      {1.0 - p0, 1, DensityMatrix::basis({2}, 1)},
  };
  return {std::move(rho), std::move(branches)};
}

BathState vqt_bath(const VqtResult& result) {
  return {result.prepared_state.with_dims({2}), latent_branches(result)};
}

// Evolution backend: exact propagators or the stroke circuits, chosen once.
class Strokes {
 public:
  Strokes(const EngineConfig& cfg)
      : exact_(cfg.execution == ExecutionMode::Exact),
        steps_(cfg.steps_per_stroke) {
    if (exact_) {
      StrokeHamiltonians h = stroke_hamiltonians(cfg.spec);
      u_heat_ = herm_propagator(h.h_q, cfg.tau_q);
      u_work_ = herm_propagator(h.h_w, cfg.tau_w);
    } else {
      heat_circ_ = build_heat_stroke_circuit(cfg.spec, cfg.tau_q / steps_);
      work_circ_ = build_work_stroke_circuit(cfg.spec, cfg.tau_w / steps_);
    }
  }

  DensityMatrix heat(const DensityMatrix& global) const {
    return evolve(global, u_heat_, heat_circ_);
  }
  DensityMatrix work(const DensityMatrix& chain) const {
    return evolve(chain, u_work_, work_circ_);
  }

 private:
  DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u,
                       const Circuit& circ) const {
    if (exact_) {
      return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.dims());
    }
    DensityMatrix out = rho;
    for (int s = 0; s < steps_; ++s) out = apply_circuit(out, circ);
    return out;
  }

  bool exact_;
  int steps_;
  ComplexMatrix u_heat_, u_work_;
  Circuit heat_circ_, work_circ_;
};

Mode sign_mode(double q_cold, double q_hot, double work) {
  if (q_hot > kSignDeadBand && q_cold < -kSignDeadBand) {
    if (work > kSignDeadBand) return Mode::HeatEngine;
    if (work < -kSignDeadBand) return Mode::Accelerator;
    return Mode::Other;
  }
  if (q_cold > kSignDeadBand && q_hot < -kSignDeadBand &&
      work < -kSignDeadBand) {
    return Mode::Refrigerator;
  }
  return Mode::Other;
}

DensityMatrix as_qubits(const DensityMatrix& rho, int width,
                        const char* what) {
  if (rho.dim() != (1 << width)) {
    throw std::invalid_argument(std::string(what) +
                                " has the wrong dimension");
  }
  return rho.with_dims(qubit_dims(width));
}

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::HeatEngine: return "heat_engine";
    case Mode::Refrigerator: return "refrigerator";
    case Mode::Accelerator: return "accelerator";
    case Mode::Other: return "other";
  }
  return "?";
}

void EngineConfig::validate() const {
  spec.validate();
  if (!(tau_q >= 0.0) || !(tau_w >= 0.0) || !std::isfinite(tau_q) ||
      !std::isfinite(tau_w)) {
    throw std::invalid_argument("stroke durations must be finite and >= 0");
  }
  if (n_cycles < 1) throw std::invalid_argument("n_cycles must be >= 1");
  if (steps_per_stroke < 1) {
    throw std::invalid_argument("steps_per_stroke must be >= 1");
  }
  if (execution == ExecutionMode::Shots && shots < 1) {
    throw std::invalid_argument("shots must be >= 1");
  }
  if (bath_prep.kind == BathPrepConfig::Kind::Vqt &&
      (!bath_prep.cold || !bath_prep.hot)) {
    throw std::invalid_argument("vqt bath prep needs both trained baths");
  }
  if (initial_chain_state &&
      initial_chain_state->dim() != (1 << spec.n_sites)) {
    throw std::invalid_argument("initial chain state dimension mismatch");
  }
}

RunResult run_cycles(const EngineConfig& cfg) {
  cfg.validate();
  const int n = cfg.spec.n_sites;
  const int width = n + 2;

  BathState cold = cfg.bath_prep.kind == BathPrepConfig::Kind::Vqt
                       ? vqt_bath(*cfg.bath_prep.cold)
                       : gibbs_bath(cfg.spec.omega_c, cfg.spec.t_cold);
  BathState hot = cfg.bath_prep.kind == BathPrepConfig::Kind::Vqt
                      ? vqt_bath(*cfg.bath_prep.hot)
                      : gibbs_bath(cfg.spec.omega_h, cfg.spec.t_hot);

  DensityMatrix rho_s =
      cfg.initial_chain_state
          ? as_qubits(*cfg.initial_chain_state, n, "initial chain state")
          : DensityMatrix::basis(qubit_dims(n), (1 << n) - 1);

  Strokes strokes(cfg);
  std::vector<int> chain_keep(n);
  for (int s = 0; s < n; ++s) chain_keep[s] = 1 + s;

  const bool sampled = cfg.execution == ExecutionMode::Shots;
  std::mt19937_64 seed_stream(cfg.seed);
  auto record_sz = [&](const DensityMatrix& chain) {
    std::vector<SigmaZRecord> recs(n);
    for (int s = 0; s < n; ++s) {
      if (sampled) {
        ShotEstimate est = sample_sigma_z(chain, s, cfg.shots, seed_stream());
        recs[s] = {est.mean, est.std_error};
      } else {
        recs[s] = {sigma_z_expectation(chain, s), 0.0};
      }
    }
    return recs;
  };

  auto heat_stroke = [&](const DensityMatrix& global_pre) {
    if (!cfg.four_branch) return strokes.heat(global_pre);
    ComplexMatrix acc = ComplexMatrix::Zero(1 << width, 1 << width);
    for (const BathBranch& bc : cold.branches) {
      for (const BathBranch& bh : hot.branches) {
        double weight = bc.weight * bh.weight;
        if (weight <= 0.0) continue;
        DensityMatrix branch = tensor(tensor(bc.pure, rho_s), bh.pure);
        acc += weight * strokes.heat(branch).matrix();
      }
    }
    return DensityMatrix(std::move(acc), qubit_dims(width));
  };

  RunResult out;
  out.chain_states.push_back(rho_s);
  std::vector<SigmaZRecord> sz_pre = record_sz(rho_s);

  double cum_q_cold = 0, cum_q_hot = 0, cum_work = 0;
  for (int cycle = 1; cycle <= cfg.n_cycles; ++cycle) {
    DensityMatrix global_pre = tensor(tensor(cold.state, rho_s), hot.state);
    DensityMatrix global_post = heat_stroke(global_pre);
    DensityMatrix mid_s = partial_trace(global_post, chain_keep);
    std::vector<SigmaZRecord> sz_mid = record_sz(mid_s);

    DensityMatrix next_s = strokes.work(mid_s);
    std::vector<SigmaZRecord> sz_post = record_sz(next_s);

    CycleRecord rec;
    rec.cycle = cycle;
    double w1 = cfg.spec.omegas.front(), wn = cfg.spec.omegas.back();
    rec.q_cold = 0.5 * w1 * (sz_mid.front().value - sz_pre.front().value);
    rec.q_hot = 0.5 * wn * (sz_mid.back().value - sz_pre.back().value);
    rec.err_q_cold =
        0.5 * w1 * std::hypot(sz_mid.front().err, sz_pre.front().err);
    rec.err_q_hot =
        0.5 * wn * std::hypot(sz_mid.back().err, sz_pre.back().err);

    double work = 0, err_work_sq = 0;
    for (int s = 0; s < n; ++s) {
      double half_w = 0.5 * cfg.spec.omegas[s];
      work -= half_w * (sz_post[s].value - sz_mid[s].value);
      err_work_sq += half_w * half_w *
                     (sz_post[s].err * sz_post[s].err +
                      sz_mid[s].err * sz_mid[s].err);
    }
    rec.work = work;
    rec.err_work = std::sqrt(err_work_sq);

    auto [qcb, qhb] = bath_side_heat(global_pre, global_post, cfg.spec);
    rec.q_cold_bath = qcb;
    rec.q_hot_bath = qhb;
    auto [on_c, on_h] = onoff_work(global_pre, global_post, cfg.spec);
    rec.dv_cold = -on_c;
    rec.dv_hot = -on_h;

    cum_q_cold += rec.q_cold;
    cum_q_hot += rec.q_hot;
    cum_work += rec.work;
    rec.cum_q_cold = cum_q_cold;
    rec.cum_q_hot = cum_q_hot;
    rec.cum_work = cum_work;
    rec.sz_pre = std::move(sz_pre);
    rec.sz_mid = std::move(sz_mid);
    rec.sz_post = sz_post;

    out.ledger.cycles.push_back(std::move(rec));
    out.mid_states.push_back(std::move(mid_s));
    out.chain_states.push_back(next_s);
    rho_s = std::move(next_s);
    sz_pre = std::move(sz_post);  // same state, same measurement record
  }
  return out;
}

std::pair<double, double> bath_side_heat(const DensityMatrix& global_pre,
                                         const DensityMatrix& global_post,
                                         const ChainSpec& spec) {
  const int width = spec.total_qubits();
  DensityMatrix pre = as_qubits(global_pre, width, "global_pre");
  DensityMatrix post = as_qubits(global_post, width, "global_post");

  ComplexMatrix h_c = local_hamiltonian(spec.omega_c);
  ComplexMatrix h_h = local_hamiltonian(spec.omega_h);
  double q_c = -(expectation(partial_trace(post, {0}), h_c) -
                 expectation(partial_trace(pre, {0}), h_c));
  double q_h = -(expectation(partial_trace(post, {width - 1}), h_h) -
                 expectation(partial_trace(pre, {width - 1}), h_h));
  return {q_c, q_h};
}

std::pair<double, double> onoff_work(const DensityMatrix& global_pre,
                                     const DensityMatrix& global_post,
                                     const ChainSpec& spec) {
  const int width = spec.total_qubits();
  DensityMatrix pre = as_qubits(global_pre, width, "global_pre");
  DensityMatrix post = as_qubits(global_post, width, "global_post");

  ComplexMatrix delta = post.matrix() - pre.matrix();
  ComplexMatrix v_c =
      embed_gate(hopping_interaction(spec.g_c), {0, 1}, width);
  ComplexMatrix v_h = embed_gate(hopping_interaction(spec.g_h),
                                 {width - 2, width - 1}, width);
  double dv_c = (v_c * delta).trace().real();
  double dv_h = (v_h * delta).trace().real();
  return {-dv_c, -dv_h};
}

LimitCycleReport detect_limit_cycle(const RunResult& result, double tol) {
  const int executed = static_cast<int>(result.ledger.cycles.size());
  if (executed < 1) throw std::invalid_argument("empty run");

  LimitCycleReport report;
  const CycleRecord& last = result.ledger.cycles.back();
  report.q_cold_star = last.q_cold;
  report.q_hot_star = last.q_hot;
  report.work_star = last.work;
  report.first_law_residual =
      std::abs(last.q_cold + last.q_hot - last.work);
  report.mode = sign_mode(last.q_cold, last.q_hot, last.work);

  // Two executed cycles are the minimum evidence for stationarity.
  if (executed < 2) return report;
  for (int cycle = 1; cycle <= executed; ++cycle) {
    if (trace_distance(result.chain_states[cycle],
                       result.chain_states[cycle - 1]) < tol) {
      report.reached = true;
      report.cycle_index = cycle;
      break;
    }
  }
  return report;
}

Mode classify_mode(const ChainSpec& spec) {
  spec.validate();
  if (spec.n_sites != 2) {
    throw std::invalid_argument("mode classification is defined for N = 2");
  }
  double r = spec.omegas[0] / spec.omegas[1];
  double t = spec.t_cold / spec.t_hot;
  const double eps = 1e-12;
  // Exact boundaries carry no signed power.
  if (std::abs(r - t) <= eps * std::max(1.0, std::abs(r)) ||
      std::abs(r - 1.0) <= eps) {
    return Mode::Other;
  }
  if (r > 1.0) return Mode::Accelerator;
  if (r < t) return Mode::Refrigerator;
  return Mode::HeatEngine;
}

bool verify_mode(const LimitCycleReport& report, Mode predicted) {
  if (!report.reached) {
    throw std::logic_error("verify_mode needs a reached limit cycle");
  }
  return sign_mode(report.q_cold_star, report.q_hot_star,
                   report.work_star) == predicted;
}

void write_ledger_csv(const CycleLedger& ledger, std::ostream& out) {
  out << "cycle,q_cold,q_hot,work,q_sum,dv_cold,dv_hot,"
         "sz1_pre,sz1_mid,sz2_pre,sz2_mid,err_q_cold,err_q_hot,err_work\n";
  char buf[512];
  for (const CycleRecord& rec : ledger.cycles) {
    std::snprintf(
        buf, sizeof(buf),
        "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
        "%.17g,%.17g,%.17g\n",
        rec.cycle, rec.q_cold, rec.q_hot, rec.work, rec.q_cold + rec.q_hot,
        rec.dv_cold, rec.dv_hot, rec.sz_pre.front().value,
        rec.sz_mid.front().value, rec.sz_pre.back().value,
        rec.sz_mid.back().value, rec.err_q_cold, rec.err_q_hot, rec.err_work);
    out << buf;
  }
}

}  // namespace twostroke
