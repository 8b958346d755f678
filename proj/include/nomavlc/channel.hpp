// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

namespace nomavlc {

/// Lambertian mode number for an LED with the given half-power semiangle.
///
/// Strictly increasing as the semiangle shrinks: a narrow beam has a high
/// mode number. Throws std::domain_error unless the angle is in (0, pi/2).
double lambertian_order(double semiangle_half_power_rad);

/// Optical concentrator gain n^2 / sin^2(fov). Constant over the field of
/// view. Throws std::domain_error for fov outside (0, pi/2] or n < 1.
double concentrator_gain(double fov_rad, double refractive_index);

/// Lambertian radiant intensity [(m+1)/2pi] cos^m(angle), in 1/sr.
/// Maximal on the emission axis, zero at grazing incidence.
double radiant_intensity(double order, double irradiance_angle_rad);

/// LED transmitter pose and emission pattern.
struct LedConfig {
  Eigen::Vector3d position{5.0, 5.0, 3.0};  // meters
  Eigen::Vector3d normal{0.0, 0.0, -1.0};   // unit, emission axis into the room
  double semiangle_half_power = 1.0471975511965976;  // 60 deg
  double lambertian_order = 1.0;                     // derived, cached

  /// Validates the pose and caches the Lambertian order for the semiangle.
  static LedConfig make(const Eigen::Vector3d& position,
                        const Eigen::Vector3d& normal,
                        double semiangle_half_power_rad);
};

/// Photodiode front end: detection area, optical filter, concentrator optics.
struct OpticalFrontEnd {
  double detector_area = 1e-4;     // m^2
  double filter_gain = 1.0;        // dimensionless
  double refractive_index = 1.5;   // dimensionless, >= 1
  double fov = 1.0471975511965976; // radians, 60 deg

  void validate() const;  // throws std::invalid_argument on a bad field
};

/// Receiver position and photodiode facing direction.
struct ReceiverPose {
  Eigen::Vector3d position{0.0, 0.0, 0.0};
  Eigen::Vector3d normal{0.0, 0.0, 1.0};  // unit

  static ReceiverPose make(const Eigen::Vector3d& position,
                           const Eigen::Vector3d& normal);
};

/// Line-of-sight DC channel gain. g is always exactly h^2.
struct ChannelGain {
  double h = 0.0;
  double g = 0.0;
};

/// DC gain of the LED -> receiver line-of-sight path.
///
/// Zero whenever the incidence angle exceeds the receiver field of view or
/// the receiver lies behind the LED emission plane. Throws
/// std::invalid_argument if the two positions coincide.
ChannelGain channel_dc_gain(const LedConfig& led, const ReceiverPose& rx,
                            const OpticalFrontEnd& fe);

}  // namespace nomavlc
