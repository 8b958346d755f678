// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nomavlc/json_io.hpp"
#include "nomavlc/sweep.hpp"
#include "test_util.hpp"

using namespace nomavlc;
using nlohmann::json;

TEST_CASE("scenario json round trip is lossless at full precision") {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> gains;
    const int m = 1 + int(rng() % 6);
    for (int k = 0; k < m; ++k) gains.push_back(testutil::log_uniform(rng, 1e-13, 1e-6));
    const Scenario s =
        build_scenario(gains, 0.1 + 0.2, testutil::uniform(rng, 1.0, 30.0),
                       std::numbers::pi_v<double> * 7.0, 30.0, 1.0 / 3.0);
    const std::string text = scenario_to_json(s).dump();
    const Scenario back = scenario_from_json(json::parse(text));
    CHECK((back.gains.array() == s.gains.array()).all());
    CHECK(back.order == s.order);
    CHECK(back.noise_power_mw == s.noise_power_mw);
    CHECK(back.p_max_mw == s.p_max_mw);
    CHECK(back.dc_bias == s.dc_bias);
    CHECK(back.peak_intensity == s.peak_intensity);
    CHECK(back.pam_coefficient == s.pam_coefficient);
    CHECK(back.u_max == s.u_max);
  }
}

TEST_CASE("scenario diagnostics name the offending field") {
  const auto message_of = [](const json& j) {
    try {
      scenario_from_json(j);
      return std::string("no error");
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
  };
  CHECK(message_of(json::object()).find("gains") != std::string::npos);
  CHECK(message_of({{"gains", {1.0}}}).find("noise_power_mw") != std::string::npos);
  CHECK(message_of({{"gains", "nope"},
                    {"noise_power_mw", 1.0},
                    {"p_max_mw", 1.0},
                    {"dc_bias", 2.0},
                    {"peak_intensity", 3.0},
                    {"pam_coefficient", 1.0}})
            .find("gains") != std::string::npos);
  CHECK(message_of({{"gains", {1.0, 0.0}},
                    {"noise_power_mw", 1.0},
                    {"p_max_mw", 1.0},
                    {"dc_bias", 2.0},
                    {"peak_intensity", 3.0},
                    {"pam_coefficient", 1.0}})
            .find("gains[1]") != std::string::npos);
  CHECK(message_of({{"gains", {1.0}},
                    {"noise_power_mw", 1.0},
                    {"p_max_mw", 1.0},
                    {"dc_bias", 2.0},
                    {"peak_intensity", 3.0},
                    {"pam_coefficient", 1.0},
                    {"surprise", 1}})
            .find("surprise") != std::string::npos);
}

TEST_CASE("geometry provenance is accepted and ignored") {
  json j = {{"gains", {1e-10, 2e-10}}, {"noise_power_mw", 4e-11},
            {"p_max_mw", 16.0},        {"dc_bias", 20.0},
            {"peak_intensity", 30.0},  {"pam_coefficient", 1.0},
            {"geometry", {{"anything", 1}}}};
  CHECK_NOTHROW(scenario_from_json(j));
}

TEST_CASE("solver config parsing") {
  CHECK(solver_config_from_json(json::object()).barrier_mu == SolverConfig{}.barrier_mu);
  const SolverConfig cfg =
      solver_config_from_json({{"barrier_mu", 20.0}, {"max_newton", 7}});
  CHECK(cfg.barrier_mu == 20.0);
  CHECK(cfg.max_newton == 7);
  CHECK(cfg.gap_tol == SolverConfig{}.gap_tol);

  CHECK_THROWS_AS(solver_config_from_json({{"gap_toll", 1e-8}}), std::runtime_error);
  CHECK_THROWS_AS(solver_config_from_json({{"barrier_mu", 0.5}}), std::runtime_error);
  CHECK_THROWS_AS(solver_config_from_json({{"max_newton", 2.5}}), std::runtime_error);
}

TEST_CASE("solve result json reports in original user order") {
  // Scrambled gains; the strongest original user is index 0.
  const Scenario s = build_scenario(std::vector<double>{4e-10, 1e-10, 2e-10}, 4e-11,
                                    12.0, 20.0, 30.0, 1.0);
  const SolveResult r = solve(s);
  REQUIRE(r.status == SolveStatus::optimal);
  const json j = solve_result_to_json(s, r);
  CHECK(j.at("status") == "optimal");
  const auto rates = j.at("rates_nats").get<std::vector<double>>();
  REQUIRE(rates.size() == 3);
  // Higher gain decodes later and sees less interference: original user 0
  // must carry the highest rate.
  CHECK(rates[0] > rates[1]);
  CHECK(rates[0] > rates[2]);
  CHECK(j.at("powers_mw").get<std::vector<double>>().size() == 3);
}

TEST_CASE("csv formatting is shortest-round-trip and stable") {
  std::vector<SweepRow> rows(2);
  rows[0] = {8.0, 0.1 + 0.2, 1234.5678901234567, SolveStatus::optimal, 11, 150,
             7.5e-10};
  rows[1] = {10.0, 1.0 / 3.0, 2.0, SolveStatus::max_iterations, 2, 50, 0.5};
  const std::string csv = sweep_to_csv(rows);
  CHECK(csv.find("p_max_mw,sum_rate_nats,harmonic_objective,status,outer_iters,"
                 "newton_iters,kkt_residual\n") == 0);
  CHECK(csv.find("max_iterations") != std::string::npos);
  // Every float parses back to the exact double that produced it.
  CHECK(csv.find("0.30000000000000004") != std::string::npos);
  CHECK(csv.find("0.3333333333333333,") != std::string::npos);
  CHECK(sweep_to_csv(rows) == csv);
}

TEST_CASE("missing files produce single-line diagnostics") {
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/path.json"), std::runtime_error);
  CHECK_THROWS_AS(load_solver_config_file("/nonexistent/cfg.json"), std::runtime_error);
}
