// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <random>

#include "nomavlc/channel.hpp"
#include "test_util.hpp"

using namespace nomavlc;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

OpticalFrontEnd default_fe() { return OpticalFrontEnd{}; }

}  // namespace

TEST_CASE("lambertian order at the classic semiangles") {
  CHECK(lambertian_order(60.0 * kDeg) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambertian_order(45.0 * kDeg) == doctest::Approx(2.0).epsilon(1e-14));
  // Independent long double evaluation as the oracle for 30 degrees.
  const long double oracle =
      -std::log(2.0L) / std::log(std::cos(30.0L * 3.14159265358979323846264338328L / 180.0L));
  CHECK(lambertian_order(30.0 * kDeg) ==
        doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));
  CHECK(lambertian_order(30.0 * kDeg) ==
        doctest::Approx(4.8188416793064180).epsilon(1e-13));
}

TEST_CASE("lambertian order is increasing as the beam narrows") {
  double prev = lambertian_order(89.0 * kDeg);
  for (double deg = 80.0; deg >= 10.0; deg -= 10.0) {
    const double order = lambertian_order(deg * kDeg);
    CHECK(order > prev);
    prev = order;
  }
}

TEST_CASE("lambertian order domain errors") {
  CHECK_THROWS_AS(lambertian_order(0.0), std::domain_error);
  CHECK_THROWS_AS(lambertian_order(-0.1), std::domain_error);
  CHECK_THROWS_AS(lambertian_order(std::numbers::pi / 2.0), std::domain_error);
}

TEST_CASE("concentrator gain") {
  CHECK(concentrator_gain(60.0 * kDeg, 1.5) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(concentrator_gain(90.0 * kDeg, 1.5) == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(concentrator_gain(70.0 * kDeg, 1.5) ==
        doctest::Approx(2.548067245721537).epsilon(1e-13));
  CHECK_THROWS_AS(concentrator_gain(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(concentrator_gain(1.6, 1.5), std::domain_error);
  CHECK_THROWS_AS(concentrator_gain(1.0, 0.9), std::domain_error);
}

TEST_CASE("radiant intensity") {
  CHECK(radiant_intensity(1.0, 0.0) ==
        doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(radiant_intensity(1.0, 90.0 * kDeg) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(radiant_intensity(1.0, 60.0 * kDeg) ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK_THROWS_AS(radiant_intensity(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(radiant_intensity(1.0, -0.1), std::domain_error);
}

TEST_CASE("gain directly below the LED matches the closed form") {
  const LedConfig led = LedConfig::make({0.0, 0.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  const ReceiverPose rx{{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  const OpticalFrontEnd fe = default_fe();
  const ChannelGain cg = channel_dc_gain(led, rx, fe);
  const double expect = fe.detector_area / 9.0 * (2.0 / (2.0 * std::numbers::pi)) *
                        fe.filter_gain * concentrator_gain(fe.fov, fe.refractive_index);
  CHECK(cg.h == doctest::Approx(expect).epsilon(1e-14));
  CHECK(cg.g == cg.h * cg.h);
}

TEST_CASE("gain vanishes outside the field of view") {
  const LedConfig led = LedConfig::make({0.0, 0.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  // Incidence angle atan(horizontal / 3) > 60 deg once horizontal > 3*sqrt(3).
  const ReceiverPose rx{{5.3, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  const ChannelGain cg = channel_dc_gain(led, rx, default_fe());
  CHECK(cg.h == 0.0);
  CHECK(cg.g == 0.0);
}

TEST_CASE("gain is positive just inside the FOV boundary and zero outside") {
  const LedConfig led = LedConfig::make({0.0, 0.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  const double edge = 3.0 * std::tan(60.0 * kDeg);
  const ChannelGain inside =
      channel_dc_gain(led, {{edge - 1e-6, 0.0, 0.0}, {0, 0, 1}}, default_fe());
  const ChannelGain outside =
      channel_dc_gain(led, {{edge + 1e-6, 0.0, 0.0}, {0, 0, 1}}, default_fe());
  CHECK(inside.h > 0.0);
  CHECK(outside.h == 0.0);
}

TEST_CASE("gain vanishes behind the LED plane and behind the diode") {
  const LedConfig led = LedConfig::make({0.0, 0.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  CHECK(channel_dc_gain(led, {{0.5, 0.0, 4.0}, {0.0, 0.0, 1.0}}, default_fe()).h == 0.0);
  CHECK(channel_dc_gain(led, {{0.5, 0.0, 0.0}, {0.0, 0.0, -1.0}}, default_fe()).h == 0.0);
}

TEST_CASE("off-axis gain matches an independent term-by-term evaluation") {
  const LedConfig led = LedConfig::make({5.0, 5.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  const ReceiverPose rx{{6.0, 6.0, 0.0}, {0.0, 0.0, 1.0}};
  const ChannelGain cg = channel_dc_gain(led, rx, default_fe());

  // Term-by-term oracle in long double: d^2 = 11, cos(irradiance) =
  // cos(incidence) = 3/sqrt(11), order 1, concentrator 3.
  const long double d2 = 11.0L;
  const long double cosang = 3.0L / std::sqrt(11.0L);
  const long double oracle = 1e-4L / d2 * (2.0L / (2.0L * 3.14159265358979323846L) *
                                           cosang) * 1.0L * 3.0L * cosang;
  CHECK(cg.h == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));
  CHECK(cg.h == doctest::Approx(7.1027825842664034e-6).epsilon(1e-13));
  CHECK(cg.g == doctest::Approx(5.0449520439358128e-11).epsilon(1e-13));
}

TEST_CASE("coincident positions are a geometry error") {
  const LedConfig led = LedConfig::make({1.0, 2.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  CHECK_THROWS_AS(channel_dc_gain(led, {{1.0, 2.0, 3.0}, {0.0, 0.0, 1.0}}, default_fe()),
                  std::invalid_argument);
}

TEST_CASE("non-unit normals are rejected") {
  CHECK_THROWS_AS(LedConfig::make({0, 0, 3}, {0.0, 0.0, -2.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ReceiverPose::make({0, 0, 0}, {0.0, 1e-5, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("inverse-square law along a fixed ray") {
  const LedConfig led = LedConfig::make({0.0, 0.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  const Eigen::Vector3d dir = Eigen::Vector3d(0.4, 0.2, -1.0).normalized();
  std::mt19937_64 rng(7);
  const double h_ref =
      channel_dc_gain(led, {led.position + 2.0 * dir, {0, 0, 1}}, default_fe()).h;
  for (int i = 0; i < 50; ++i) {
    const double d = testutil::uniform(rng, 0.5, 20.0);
    const double h = channel_dc_gain(led, {led.position + d * dir, {0, 0, 1}},
                                     default_fe()).h;
    // Angles are fixed along the ray, so h * d^2 is constant.
    CHECK(h * d * d == doctest::Approx(h_ref * 4.0).epsilon(1e-12));
  }
}

TEST_CASE("rotational symmetry about the emission axis") {
  const LedConfig led = LedConfig::make({5.0, 5.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Vector3d offset(testutil::uniform(rng, -2.5, 2.5),
                                 testutil::uniform(rng, -2.5, 2.5), -3.0);
    const Eigen::Vector3d normal =
        Eigen::Vector3d(testutil::uniform(rng, -0.3, 0.3),
                        testutil::uniform(rng, -0.3, 0.3), 1.0)
            .normalized();
    const double h0 =
        channel_dc_gain(led, {led.position + offset, normal}, default_fe()).h;
    const double angle = testutil::uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    const double h1 = channel_dc_gain(
        led, {led.position + rot * offset, rot * normal}, default_fe()).h;
    CHECK(h1 == doctest::Approx(h0).epsilon(1e-12));
  }
}

TEST_CASE("g is exactly the square of h on random geometries") {
  std::mt19937_64 rng(13);
  const LedConfig led = LedConfig::make({5.0, 5.0, 3.0}, {0.0, 0.0, -1.0}, 60.0 * kDeg);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d pos(testutil::uniform(rng, 0.0, 10.0),
                              testutil::uniform(rng, 0.0, 10.0), 0.0);
    const ChannelGain cg = channel_dc_gain(led, {pos, {0, 0, 1}}, default_fe());
    CHECK(cg.g == cg.h * cg.h);
    CHECK(cg.h >= 0.0);
  }
}
