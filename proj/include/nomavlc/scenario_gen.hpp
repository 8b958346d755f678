// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "nomavlc/channel.hpp"
#include "nomavlc/model.hpp"

namespace nomavlc {

/// Room and drop geometry for the scenario generator. The LED hangs at the
/// ceiling center facing down and receivers sit on a horizontal plane
/// facing up; the standard VLC testbench layout, all overridable.
struct RoomConfig {
  Eigen::Vector3d dimensions{10.0, 10.0, 3.0};  // meters
  Eigen::Vector3d led_position{5.0, 5.0, 3.0};
  double receiver_plane_z = 0.0;
  int num_users = 20;
  std::uint64_t seed = 1;
};

/// Optics and signal parameters applied to every generated scenario.
struct ScenarioDefaults {
  OpticalFrontEnd front_end{};
  double semiangle_half_power = 1.0471975511965976;  // 60 deg
  double dc_bias = 20.0;
  double peak_intensity = 30.0;
  double pam_coefficient = 1.0;
  double noise_dbm = -104.0;
  double p_max_mw = 20.0;
};

/// A generated instance plus the geometry it came from (provenance only;
/// solving needs just the Scenario).
struct GeneratedScenario {
  Scenario scenario;
  LedConfig led;
  std::vector<Eigen::Vector3d> user_positions;  // original user order
};

double noise_dbm_to_mw(double dbm);

/// Draws num_users receiver positions uniformly on the floor rectangle with
/// a seeded generator whose output is identical on every platform, computes
/// their channel gains, and builds the Scenario. Positions outside the
/// receiver field of view (zero gain) are resampled, up to 1000 tries per
/// user before std::runtime_error.
GeneratedScenario gen_scenario(const RoomConfig& room,
                               const ScenarioDefaults& defaults = {});

}  // namespace nomavlc
