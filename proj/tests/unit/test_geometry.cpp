#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fftnav/error.hpp"
#include "fftnav/geometry.hpp"

using namespace fftnav;

TEST(ProtectiveModel, SimulationRobot) {
  const auto m = derive_protective_model(0.15, 0.3);
  EXPECT_NEAR(m.plan_dist, 0.6, 1e-12);
  EXPECT_NEAR(rad_to_deg(m.alpha), 60.0, 1e-9);
}

TEST(ProtectiveModel, Drone) {
  const auto a = derive_protective_model(0.29, 0.7);
  EXPECT_NEAR(a.plan_dist, 1.69, 0.01);
  EXPECT_NEAR(rad_to_deg(a.alpha), 49.0, 0.5);
  const auto b = derive_protective_model(0.15, 0.65);
  EXPECT_NEAR(b.plan_dist, 2.82, 0.01);
  EXPECT_NEAR(rad_to_deg(b.alpha), 27.0, 0.5);
}

TEST(ProtectiveModel, EqualRadii) {
  const auto m = derive_protective_model(0.2, 0.2);
  EXPECT_DOUBLE_EQ(m.plan_dist, 0.2);
  EXPECT_DOUBLE_EQ(m.alpha, kPi);
}

TEST(ProtectiveModel, RejectsBadRadii) {
  EXPECT_THROW(derive_protective_model(0.0, 0.3), Error);
  EXPECT_THROW(derive_protective_model(-0.1, 0.3), Error);
  EXPECT_THROW(derive_protective_model(0.3, 0.2), Error);
  try {
    derive_protective_model(0.3, 0.2);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRadii);
  }
}

TEST(ProtectiveModel, ChordClosesForRandomRadii) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double r0 = u(rng);
    const double r = r0 * (1.0 + 4.0 * u(rng));
    const auto m = derive_protective_model(r0, r);
    EXPECT_NEAR(m.plan_dist * std::cos((kPi - m.alpha) / 2.0), r, 1e-12 * r);
    EXPECT_GT(m.alpha, 0.0);
    EXPECT_LE(m.alpha, kPi);
  }
}

TEST(Cutoff, SimulationSensor) {
  const SensorConfig cfg{kTwoPi, 360, 3.0, std::nullopt};
  const auto c = cutoff_frequency(cfg, derive_protective_model(0.15, 0.3));
  EXPECT_NEAR(c.analog, 6.0, 1e-12);
  EXPECT_NEAR(c.digital, 1.0 / 60.0, 1e-12);
  EXPECT_EQ(c.window, 60);
}

TEST(Cutoff, FovEqualsSector) {
  ProtectiveModel m = derive_protective_model(0.15, 0.3);
  const SensorConfig cfg{m.alpha, 90, 3.0, std::nullopt};
  const auto c = cutoff_frequency(cfg, m);
  EXPECT_NEAR(c.analog, 1.0, 1e-12);
  EXPECT_NEAR(c.digital, 1.0 / 90.0, 1e-12);
  EXPECT_EQ(c.window, 90);
}

TEST(Cutoff, NarrowSector) {
  ProtectiveModel m;
  m.alpha = deg_to_rad(27.0);
  const SensorConfig cfg{kTwoPi, 360, 3.0, std::nullopt};
  const auto c = cutoff_frequency(cfg, m);
  EXPECT_NEAR(c.digital, 0.0370, 1e-4);
  EXPECT_EQ(c.window, 27);  // 1/fc = 360 * 27 / 360 = 27 exactly
}

TEST(AngleIndex, FullCircle) {
  const SensorConfig cfg{kTwoPi, 360, 3.0, std::nullopt};
  EXPECT_EQ(angle_to_index(0.0, cfg), 0);
  EXPECT_EQ(angle_to_index(kPi, cfg), 180);
  EXPECT_EQ(angle_to_index(-deg_to_rad(1.0), cfg), 359);
  EXPECT_NEAR(index_to_angle(90, cfg), kPi / 2, 1e-12);
  EXPECT_NEAR(index_to_angle(270, cfg), -kPi / 2, 1e-12);
}

TEST(AngleIndex, PartialView) {
  const SensorConfig cfg{deg_to_rad(90.0), 90, 3.0, std::nullopt};
  EXPECT_EQ(angle_to_index(0.0, cfg), 45);
  EXPECT_THROW(angle_to_index(deg_to_rad(60.0), cfg), Error);
  EXPECT_NEAR(index_to_angle(0, cfg), -deg_to_rad(45.0), 1e-12);
}

TEST(AngleIndex, RoundTripWithinOneSample) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const SensorConfig cfg{kTwoPi, 360, 3.0, std::nullopt};
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    const double back = index_to_angle(angle_to_index(a, cfg), cfg);
    EXPECT_LE(std::abs(wrap_pi(back - a)), cfg.resolution());
  }
}

TEST(AngleIndex, MonotoneAndBijective) {
  const SensorConfig cfg{deg_to_rad(120.0), 240, 3.0, std::nullopt};
  for (int i = 0; i < cfg.samples; ++i) {
    EXPECT_EQ(angle_to_index(index_to_angle(i, cfg), cfg), i);
    if (i > 0) {
      EXPECT_GT(index_to_angle(i, cfg), index_to_angle(i - 1, cfg));
    }
  }
}

TEST(Quadrant, Classification) {
  const auto m = derive_protective_model(0.15, 0.3);
  EXPECT_EQ(classify_quadrant(m.alpha / 4, m), Quadrant::kFrontLeft);
  EXPECT_EQ(classify_quadrant(deg_to_rad(-80.0), m), Quadrant::kRightSide);
  EXPECT_EQ(classify_quadrant(deg_to_rad(170.0), m), Quadrant::kNone);
  EXPECT_EQ(classify_quadrant(deg_to_rad(29.0), m), Quadrant::kFrontLeft);
  EXPECT_EQ(classify_quadrant(deg_to_rad(31.0), m), Quadrant::kLeftSide);
  EXPECT_EQ(classify_quadrant(deg_to_rad(-10.0), m), Quadrant::kFrontRight);
  EXPECT_EQ(classify_quadrant(kPi / 2, m), Quadrant::kLeftSide);
  EXPECT_EQ(classify_quadrant(-kPi / 2, m), Quadrant::kRightSide);
}

TEST(Quadrant, MirrorSymmetric) {
  const auto m = derive_protective_model(0.15, 0.3);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-kPi + 1e-9, kPi - 1e-9);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(rng);
    if (a == 0.0) continue;
    EXPECT_EQ(classify_quadrant(-a, m), mirror(classify_quadrant(a, m))) << a;
  }
}

TEST(Quadrant, BoundsDisjointAndMirrored) {
  const auto m = derive_protective_model(0.29, 0.7);
  const auto b = quadrant_bounds(m);
  EXPECT_DOUBLE_EQ(b[0].hi, m.alpha / 2);
  EXPECT_DOUBLE_EQ(b[1].lo, b[0].hi);
  EXPECT_DOUBLE_EQ(b[0].lo, -b[3].hi);
  EXPECT_DOUBLE_EQ(b[1].hi, -b[2].lo);
  EXPECT_DOUBLE_EQ(b[1].lo, -b[2].hi);
}
