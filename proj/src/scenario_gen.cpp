// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/scenario_gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nomavlc {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is implementation-defined; this is not.
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double noise_dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

GeneratedScenario gen_scenario(const RoomConfig& room,
                               const ScenarioDefaults& defaults) {
  if (room.num_users < 1) throw std::invalid_argument("num_users must be at least 1");
  for (int a = 0; a < 3; ++a) {
    if (room.led_position[a] < 0.0 || room.led_position[a] > room.dimensions[a]) {
      throw std::invalid_argument("led_position must lie inside the room");
    }
  }
  if (room.receiver_plane_z >= room.led_position.z()) {
    throw std::invalid_argument("receiver plane must lie below the LED");
  }

  GeneratedScenario out;
  out.led = LedConfig::make(room.led_position, Eigen::Vector3d(0.0, 0.0, -1.0),
                            defaults.semiangle_half_power);

  std::mt19937_64 rng(room.seed);
  std::vector<double> gains;
  gains.reserve(room.num_users);
  out.user_positions.reserve(room.num_users);

  for (int u = 0; u < room.num_users; ++u) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      const Eigen::Vector3d pos(canonical(rng) * room.dimensions.x(),
                                canonical(rng) * room.dimensions.y(),
                                room.receiver_plane_z);
      const ReceiverPose rx{pos, Eigen::Vector3d(0.0, 0.0, 1.0)};
      const ChannelGain cg = channel_dc_gain(out.led, rx, defaults.front_end);
      if (cg.g > 0.0) {
        gains.push_back(cg.g);
        out.user_positions.push_back(pos);
        placed = true;
      }
    }
    if (!placed) {
      throw std::runtime_error(
          "could not place a user inside the field of view after 1000 tries");
    }
  }

  out.scenario = build_scenario(gains, noise_dbm_to_mw(defaults.noise_dbm),
                                defaults.p_max_mw, defaults.dc_bias,
                                defaults.peak_intensity, defaults.pam_coefficient);
  return out;
}

}  // namespace nomavlc
