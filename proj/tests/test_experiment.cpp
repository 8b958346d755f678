// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "nomavlc/json_io.hpp"
#include "nomavlc/scenario_gen.hpp"
#include "nomavlc/sweep.hpp"

using namespace nomavlc;

TEST_CASE("noise conversion from dBm") {
  CHECK(noise_dbm_to_mw(-104.0) == doctest::Approx(3.9810717055349695e-11).epsilon(1e-15));
  CHECK(noise_dbm_to_mw(0.0) == 1.0);
  CHECK(noise_dbm_to_mw(10.0) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("generation is byte-deterministic in the seed") {
  RoomConfig room;
  room.seed = 123;
  room.num_users = 20;
  const std::string a = scenario_to_json(gen_scenario(room)).dump();
  const std::string b = scenario_to_json(gen_scenario(room)).dump();
  CHECK(a == b);
  room.seed = 124;
  CHECK(scenario_to_json(gen_scenario(room)).dump() != a);
}

TEST_CASE("default drop produces a valid 20-user scenario") {
  RoomConfig room;
  room.seed = 1;
  const GeneratedScenario gen = gen_scenario(room);
  CHECK(gen.scenario.num_users() == 20);
  CHECK(gen.scenario.u_max == 10.0);
  CHECK(gen.scenario.gains.minCoeff() > 0.0);
  CHECK(gen.user_positions.size() == 20);
  for (const auto& pos : gen.user_positions) {
    CHECK(pos.x() >= 0.0);
    CHECK(pos.x() <= 10.0);
    CHECK(pos.y() >= 0.0);
    CHECK(pos.y() <= 10.0);
    CHECK(pos.z() == 0.0);
    // Every kept user sits inside the field-of-view disc: incidence within
    // 60 degrees means horizontal distance at most 3 * tan(60 deg).
    const double horizontal = std::hypot(pos.x() - 5.0, pos.y() - 5.0);
    CHECK(horizontal <= 3.0 * std::tan(1.0471975511965976) + 1e-12);
  }
}

TEST_CASE("a user at the room center would dominate every sampled gain") {
  RoomConfig room;
  room.seed = 7;
  const GeneratedScenario gen = gen_scenario(room);
  const ReceiverPose center{{5.0, 5.0, 0.0}, {0.0, 0.0, 1.0}};
  const double center_gain =
      channel_dc_gain(gen.led, center, ScenarioDefaults{}.front_end).g;
  CHECK(center_gain >= gen.scenario.gains.maxCoeff());
}

TEST_CASE("an absurdly narrow field of view exhausts the resample budget") {
  RoomConfig room;
  room.seed = 1;
  room.num_users = 1;
  ScenarioDefaults defaults;
  defaults.front_end.fov = 0.001;
  CHECK_THROWS_AS(gen_scenario(room, defaults), std::runtime_error);
}

TEST_CASE("sweep rows are monotone and deterministic") {
  RoomConfig room;
  room.seed = 5;
  room.num_users = 3;
  const Scenario base = gen_scenario(room).scenario;
  SweepSpec spec;
  spec.p_max_values_mw = {1.0, 2.0, 4.0, 8.0};
  const auto rows = run_sweep(base, spec, SolverConfig{}, 0);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].status == SolveStatus::optimal);
    CHECK(rows[i].kkt_residual <= 1e-6);
    if (i > 0) {
      CHECK(rows[i].sum_rate_nats >= rows[i - 1].sum_rate_nats - 1e-6);
      CHECK(rows[i].harmonic_objective <= rows[i - 1].harmonic_objective + 1e-7);
    }
  }
  CHECK(sweep_to_csv(run_sweep(base, spec, SolverConfig{}, 0)) == sweep_to_csv(rows));
}

TEST_CASE("parallel sweep matches the sequential one byte for byte") {
  RoomConfig room;
  room.seed = 9;
  room.num_users = 2;
  const Scenario base = gen_scenario(room).scenario;
  SweepSpec spec;
  spec.p_max_values_mw = {2.0, 4.0, 8.0, 16.0};
  const std::string seq = sweep_to_csv(run_sweep(base, spec, SolverConfig{}, 0));
  const std::string par = sweep_to_csv(run_sweep(base, spec, SolverConfig{}, 3));
  CHECK(seq == par);
}

TEST_CASE("sweep spec validation") {
  SweepSpec empty;
  empty.p_max_values_mw = {};
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  SweepSpec unsorted;
  unsorted.p_max_values_mw = {8.0, 8.0};
  CHECK_THROWS_AS(unsorted.validate(), std::invalid_argument);
  SweepSpec negative;
  negative.p_max_values_mw = {-1.0, 2.0};
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
  CHECK_NOTHROW(SweepSpec{}.validate());
}

TEST_CASE("thread cap comes from the environment variable") {
  unsetenv("NOMA_VLC_THREADS");
  CHECK(sweep_threads_from_env() == 0);
  setenv("NOMA_VLC_THREADS", "3", 1);
  CHECK(sweep_threads_from_env() == 3);
  setenv("NOMA_VLC_THREADS", "abc", 1);
  CHECK(sweep_threads_from_env() == 0);
  setenv("NOMA_VLC_THREADS", "-2", 1);
  CHECK(sweep_threads_from_env() == 0);
  unsetenv("NOMA_VLC_THREADS");
}

TEST_CASE("invalid room configs are rejected") {
  RoomConfig outside;
  outside.led_position = {11.0, 5.0, 3.0};
  CHECK_THROWS_AS(gen_scenario(outside), std::invalid_argument);
  RoomConfig above;
  above.receiver_plane_z = 3.5;
  CHECK_THROWS_AS(gen_scenario(above), std::invalid_argument);
  RoomConfig none;
  none.num_users = 0;
  CHECK_THROWS_AS(gen_scenario(none), std::invalid_argument);
}
