// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nomavlc {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kUnitNormTol = 1e-12;

void require_unit(const Eigen::Vector3d& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kUnitNormTol) {
    throw std::invalid_argument(std::string(what) + " must be a unit vector");
  }
}

}  // namespace

double lambertian_order(double semiangle_half_power_rad) {
  if (!(semiangle_half_power_rad > 0.0) || !(semiangle_half_power_rad < kHalfPi)) {
    throw std::domain_error("semiangle_half_power must lie in (0, pi/2)");
  }
  return -std::numbers::ln2 / std::log(std::cos(semiangle_half_power_rad));
}

double concentrator_gain(double fov_rad, double refractive_index) {
  if (!(fov_rad > 0.0) || fov_rad > kHalfPi) {
    throw std::domain_error("fov must lie in (0, pi/2]");
  }
  if (!(refractive_index >= 1.0)) {
    throw std::domain_error("refractive_index must be >= 1");
  }
  const double s = std::sin(fov_rad);
  return refractive_index * refractive_index / (s * s);
}

double radiant_intensity(double order, double irradiance_angle_rad) {
  if (!(order > 0.0)) {
    throw std::domain_error("lambertian order must be positive");
  }
  if (irradiance_angle_rad < 0.0 || irradiance_angle_rad > kHalfPi) {
    throw std::domain_error("irradiance angle must lie in [0, pi/2]");
  }
  const double c = std::cos(irradiance_angle_rad);
  return (order + 1.0) / (2.0 * std::numbers::pi) * std::pow(c, order);
}

LedConfig LedConfig::make(const Eigen::Vector3d& position,
                          const Eigen::Vector3d& normal,
                          double semiangle_half_power_rad) {
  require_unit(normal, "led normal");
  LedConfig led;
  led.position = position;
  led.normal = normal;
  led.semiangle_half_power = semiangle_half_power_rad;
  led.lambertian_order = ::nomavlc::lambertian_order(semiangle_half_power_rad);
  return led;
}

void OpticalFrontEnd::validate() const {
  if (!(detector_area > 0.0)) throw std::invalid_argument("detector_area must be positive");
  if (!(filter_gain > 0.0)) throw std::invalid_argument("filter_gain must be positive");
  if (!(refractive_index >= 1.0)) throw std::invalid_argument("refractive_index must be >= 1");
  if (!(fov > 0.0) || fov > kHalfPi) throw std::invalid_argument("fov must lie in (0, pi/2]");
}

ReceiverPose ReceiverPose::make(const Eigen::Vector3d& position,
                                const Eigen::Vector3d& normal) {
  require_unit(normal, "receiver normal");
  return ReceiverPose{position, normal};
}

ChannelGain channel_dc_gain(const LedConfig& led, const ReceiverPose& rx,
                            const OpticalFrontEnd& fe) {
  fe.validate();
  require_unit(led.normal, "led normal");
  require_unit(rx.normal, "receiver normal");

  const Eigen::Vector3d delta = rx.position - led.position;
  const double d2 = delta.squaredNorm();
  if (d2 == 0.0) {
    throw std::invalid_argument("receiver and LED positions coincide");
  }
  const double d = std::sqrt(d2);
  const Eigen::Vector3d dir = delta / d;  // LED -> receiver

  const double cos_irradiance = led.normal.dot(dir);
  const double cos_incidence = rx.normal.dot(-dir);

  // No LOS path behind the LED plane, outside the FOV, or behind the diode.
  if (cos_irradiance < 0.0 || cos_incidence < std::cos(fe.fov)) {
    return ChannelGain{};
  }

  const double h = fe.detector_area / d2 *
                   radiant_intensity(led.lambertian_order,
                                     std::acos(std::min(cos_irradiance, 1.0))) *
                   fe.filter_gain *
                   concentrator_gain(fe.fov, fe.refractive_index) *
                   cos_incidence;
  return ChannelGain{h, h * h};
}

}  // namespace nomavlc
