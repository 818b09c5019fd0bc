#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bse2/angle.hpp"

using bse2::wrap_angle;
constexpr double pi = std::numbers::pi;

TEST(Angle, WrapRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_angle(pi), pi);
  EXPECT_DOUBLE_EQ(wrap_angle(-pi), pi);
  EXPECT_NEAR(wrap_angle(3 * pi / 2), -pi / 2, 1e-15);
  EXPECT_NEAR(wrap_angle(-3 * pi / 2), pi / 2, 1e-15);
}

TEST(Angle, DifferenceTakesShortWay) {
  EXPECT_NEAR(bse2::angle_difference(pi - 0.05, -pi + 0.05), -0.1, 1e-14);
  EXPECT_NEAR(bse2::angle_difference(-pi + 0.05, pi - 0.05), 0.1, 1e-14);
}

TEST(Angle, StrongTypeIsCanonical) {
  const bse2::Angle a = bse2::Angle::degrees(270.0);
  EXPECT_NEAR(a.value(), -pi / 2, 1e-15);
  EXPECT_NEAR((a + bse2::Angle(pi)).value(), pi / 2, 1e-15);
  EXPECT_NEAR(a.distance_to(bse2::Angle(pi / 2)), pi, 1e-15);
}

TEST(AngleProperty, WrapIsPeriodic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-pi, pi);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = dist(rng);
    for (int k = -2; k <= 2; ++k) {
      const double w = wrap_angle(beta + 2.0 * pi * k);
      EXPECT_GT(w, -pi);
      EXPECT_LE(w, pi);
      EXPECT_NEAR(bse2::angle_difference(w, beta), 0.0, 1e-14);
      EXPECT_NEAR(w, beta, 1e-14);
    }
  }
}
