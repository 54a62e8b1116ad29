// Copyright 2026 The twostroke authors
// SPDX-License-Identifier: Apache-2.0

#include "twostroke/config.hpp"

#include <sstream>

#include "doctest.h"

using namespace twostroke;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

}  // namespace

TEST_CASE("empty config yields the reference defaults") {
  RunConfig cfg = parse("");
  CHECK(cfg.spec.omegas == std::vector<double>{0.75, 1.0});
  CHECK(cfg.spec.t_cold == doctest::Approx(0.40));
  CHECK(cfg.execution == ExecutionMode::Exact);
  CHECK(cfg.n_cycles == 20);
  CHECK(cfg.out_dir == "out");
}

TEST_CASE("keys override defaults") {
  RunConfig cfg = parse(
      "[chain]\n"
      "omegas = 0.5, 2.0\n"
      "omega_c = 0.5\n"
      "omega_h = 2.0\n"
      "t_cold = 1.0\n"
      "t_hot = 1.2\n"
      "[engine]\n"
      "execution = shots\n"
      "shots = 1024\n"
      "n_cycles = 7\n"
      "four_branch = true\n"
      "seed = 99\n"
      "[vqt]\n"
      "max_iterations = 50\n"
      "[output]\n"
      "out_dir = /tmp/x\n");
  CHECK(cfg.spec.omegas == std::vector<double>{0.5, 2.0});
  CHECK(cfg.execution == ExecutionMode::Shots);
  CHECK(cfg.shots == 1024);
  CHECK(cfg.n_cycles == 7);
  CHECK(cfg.four_branch);
  CHECK(cfg.seed == 99);
  CHECK(cfg.vqt_max_iterations == 50);
  CHECK(cfg.out_dir == "/tmp/x");
}

TEST_CASE("config errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse("[engine]\nbogus = 1\n"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("[nope]\n"), doctest::Contains("unknown section"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse("tau_q = 1\n"),
                       doctest::Contains("outside any section"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("[engine]\ntau_q = abc\n"),
                       doctest::Contains("expected a number"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("[engine]\nfour_branch = maybe\n"),
                       doctest::Contains("boolean"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("[engine\n"), doctest::Contains("line 1"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse("[engine]\nexecution = quantum\n"),
                       doctest::Contains("execution"), ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("serialize and parse round-trip exactly") {
  RunConfig cfg = parse("");
  cfg.tau_q = M_PI / 1.7;
  cfg.seed = 1234567890123ULL;
  cfg.mode_g_taus = {0.123456789012345678, 2.5};
  cfg.execution = ExecutionMode::Circuit;
  cfg.bath_prep = BathPrepConfig::Kind::Vqt;

  std::string first = serialize_run_config(cfg);
  RunConfig back = parse(first);
  std::string second = serialize_run_config(back);
  CHECK(first == second);
  CHECK(back.tau_q == cfg.tau_q);
  CHECK(back.seed == cfg.seed);
  CHECK(back.mode_g_taus == cfg.mode_g_taus);
}

TEST_CASE("engine config conversion picks the initial state") {
  RunConfig cfg = parse("");
  EngineConfig ground = to_engine_config(cfg);
  REQUIRE(ground.initial_chain_state.has_value());
  CHECK(ground.initial_chain_state->matrix()(3, 3).real() ==
        doctest::Approx(1.0));

  cfg.initial_state = "zero";
  CHECK(to_engine_config(cfg).initial_chain_state->matrix()(0, 0).real() ==
        doctest::Approx(1.0));

  cfg.initial_state = "mixed";
  CHECK(to_engine_config(cfg).initial_chain_state->matrix()(1, 1).real() ==
        doctest::Approx(0.25));
  CHECK_NOTHROW(to_engine_config(cfg).validate());
}
