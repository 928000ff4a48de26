#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fftnav/error.hpp"
#include "fftnav/perception.hpp"
#include "fftnav/world.hpp"
#include "oracles.hpp"

using namespace fftnav;

namespace {

const ProtectiveModel kModel = derive_protective_model(0.15, 0.3);

SensorConfig full_circle() { return {kTwoPi, 360, 3.0, std::nullopt}; }

Scan make_scan(std::vector<double> s, const SensorConfig& cfg) {
  Scan scan;
  scan.samples = std::move(s);
  scan.config = cfg;
  return scan;
}

}  // namespace

CompressedObservation load_eight_extrema() {
  std::ifstream in(std::string(FFTNAV_TEST_DATA) + "/eight_extrema.csv");
  EXPECT_TRUE(in.good());
  CompressedObservation obs;
  const auto cfg = full_circle();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
    std::stringstream ss(line);
    std::string idx, d, kind;
    std::getline(ss, idx, ',');
    std::getline(ss, d, ',');
    std::getline(ss, kind, ',');
    obs.extrema.push_back({bearing_of_index(std::stoi(idx), cfg), std::stod(d),
                           kind == "max" ? ExtremumKind::kMax : ExtremumKind::kMin});
  }
  return obs;
}

TEST(SafeDirections, OpenField) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  const auto sd = extract_safe_directions(make_scan(std::vector<double>(360, 1.0), cfg), kModel, bank);
  ASSERT_EQ(sd.intervals.size(), 1u);
  EXPECT_EQ(sd.intervals[0].count, 360);
  EXPECT_DOUBLE_EQ(sd.scale, 0.6);
}

TEST(SafeDirections, Blocked) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  const auto sd = extract_safe_directions(make_scan(std::vector<double>(360, 0.0), cfg), kModel, bank);
  EXPECT_TRUE(sd.intervals.empty());
}

TEST(SafeDirections, SingleRunOfWindowWidth) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  const int w = bank.safe.window;
  std::vector<double> s(360, 0.0);
  for (int i = 100; i < 100 + w; ++i) s[static_cast<std::size_t>(i)] = 0.9;
  const auto sd = extract_safe_directions(make_scan(s, cfg), kModel, bank);
  ASSERT_EQ(sd.intervals.size(), 1u);
  EXPECT_EQ(sd.intervals[0].count, 1);
  EXPECT_EQ(sd.intervals[0].first_index, 100 + w / 2);
}

TEST(SafeDirections, MatchesWindowOracleFullCircle) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  const double threshold = kModel.plan_dist / cfg.max_range;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = oracle::random_scan(rng, 360);
    const auto sd = extract_safe_directions(make_scan(s, cfg), kModel, bank);
    ASSERT_EQ(sd.mask, oracle::safe_by_window(s, threshold, bank.safe.window, true)) << trial;
  }
}

TEST(SafeDirections, MatchesWindowOraclePartialView) {
  const SensorConfig cfg{deg_to_rad(180.0), 181, 3.0, std::nullopt};
  const auto bank = FilterBank::build(cfg, kModel);
  const double threshold = kModel.plan_dist / cfg.max_range;
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = oracle::random_scan(rng, 181);
    const auto sd = extract_safe_directions(make_scan(s, cfg), kModel, bank);
    ASSERT_EQ(sd.mask, oracle::safe_by_window(s, threshold, bank.safe.window, false)) << trial;
  }
}

TEST(SafeDirections, IntervalsAreDisjointRunsOfTheMask) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sd = extract_safe_directions(make_scan(oracle::random_scan(rng, 360), cfg), kModel, bank);
    std::vector<int> hits(360, 0);
    for (const auto& iv : sd.intervals) {
      EXPECT_GE(iv.count, 1);
      for (int k = 0; k < iv.count; ++k) ++hits[static_cast<std::size_t>((iv.first_index + k) % 360)];
    }
    for (int i = 0; i < 360; ++i) EXPECT_EQ(hits[static_cast<std::size_t>(i)], sd.mask[static_cast<std::size_t>(i)]);
  }
}

TEST(SafeDirections, MonotoneInPlanningDistance) {
  const auto cfg = full_circle();
  std::mt19937_64 rng(104);
  const auto small = derive_protective_model(0.15, 0.3);
  const auto large = derive_protective_model(0.15, 0.35);
  // Hold the window fixed so only the threshold changes.
  const auto bank = FilterBank::build(cfg, small);
  for (int trial = 0; trial < 200; ++trial) {
    const auto scan = make_scan(oracle::random_scan(rng, 360), cfg);
    const auto a = extract_safe_directions(scan, small, bank);
    const auto b = extract_safe_directions(scan, large, bank);
    for (int i = 0; i < 360; ++i) EXPECT_LE(b.mask[static_cast<std::size_t>(i)], a.mask[static_cast<std::size_t>(i)]);
  }
}

TEST(SafeDirections, PerceiveAgreesWithSeparateCalls) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 100; ++trial) {
    const auto scan = make_scan(oracle::random_scan(rng, 360), cfg);
    const auto p = perceive(scan, kModel, bank, 4);
    EXPECT_EQ(p.safe.mask, extract_safe_directions(scan, kModel, bank).mask);
    EXPECT_EQ(p.observation.extrema.size(), compress(scan, bank).extrema.size());
    EXPECT_EQ(p.observation.sender_id, 4);
  }
}

TEST(Compress, ConstantScan) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  const auto obs = compress(make_scan(std::vector<double>(360, 0.7), cfg), bank);
  ASSERT_EQ(obs.extrema.size(), 2u);
  EXPECT_DOUBLE_EQ(obs.extrema[0].phi, 0.0);
  EXPECT_DOUBLE_EQ(obs.extrema[1].phi, kPi);
  EXPECT_NEAR(obs.extrema[0].d, 0.7, 1e-12);
  EXPECT_NEAR(obs.extrema[1].d, 0.7, 1e-12);
}

TEST(Compress, SingleBump) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  std::vector<double> s(360);
  for (int n = 0; n < 360; ++n) s[static_cast<std::size_t>(n)] = 0.5 + 0.3 * std::cos(kTwoPi * (n - 70) / 360.0);
  const auto scan = make_scan(s, cfg);
  const auto obs = compress(scan, bank);
  ASSERT_EQ(obs.extrema.size(), 2u);
  const auto y = filter_1d_circular(s, bank.lowpass, bank);
  const int argmax = static_cast<int>(std::max_element(y.begin(), y.end()) - y.begin());
  const int argmin = static_cast<int>(std::min_element(y.begin(), y.end()) - y.begin());
  for (const auto& e : obs.extrema) {
    const int idx = angle_to_index(e.phi, cfg);
    if (e.kind == ExtremumKind::kMax) {
      EXPECT_EQ(idx, argmax);
    } else {
      EXPECT_EQ(idx, argmin);
    }
  }
}

TEST(Compress, ExtremaAlternateAndAreOrdered) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 200; ++trial) {
    const auto obs = compress(make_scan(oracle::random_scan(rng, 360), cfg), bank);
    ASSERT_GE(obs.extrema.size(), 2u);
    EXPECT_EQ(obs.extrema.size() % 2, 0u);
    for (std::size_t j = 0; j < obs.extrema.size(); ++j) {
      const auto& a = obs.extrema[j];
      const auto& b = obs.extrema[(j + 1) % obs.extrema.size()];
      EXPECT_NE(a.kind, b.kind);
      if (j + 1 < obs.extrema.size()) {
        EXPECT_LT(a.phi, b.phi);
      }
      EXPECT_GE(a.d, 0.0);
      EXPECT_LE(a.d, 1.0);
    }
  }
}

TEST(Compress, CountBoundedOnSimulatedScans) {
  const SensorConfig cfg{kTwoPi, 360, 3.0, BlindArc{kPi, deg_to_rad(15.0)}};
  const auto bank = FilterBank::build(cfg, kModel);
  const auto f0 = cutoff_frequency(cfg, kModel).analog;
  const std::size_t bound = 2 * static_cast<std::size_t>(std::ceil(f0)) + 2;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    WorldParams wp;
    wp.env = seed % 2 ? EnvKind::kRocky : EnvKind::kForest;
    const auto w = generate_world(seed, wp);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(1.0, 19.0);
    for (int k = 0; k < 40; ++k) {
      const Pose pose{{u(rng), u(rng)}, u(rng)};
      const auto scan = raycast_scan(w, pose, cfg);
      EXPECT_LE(compress(scan, bank).extrema.size(), bound);
    }
  }
}

TEST(Reconstruct, AntipodalRamp) {
  const auto cfg = full_circle();
  CompressedObservation obs;
  obs.extrema = {{0.0, 0.2, ExtremumKind::kMin}, {kPi, 0.8, ExtremumKind::kMax}};
  const auto r = reconstruct(obs, cfg, 0.0);
  EXPECT_NEAR(r.samples[90], 0.5, 1e-12);
  EXPECT_NEAR(r.samples[270], 0.5, 1e-12);
  EXPECT_NEAR(r.samples[0], 0.2, 1e-12);
  EXPECT_NEAR(r.samples[180], 0.8, 1e-12);
  EXPECT_NEAR(r.samples[45], 0.35, 1e-12);
}

TEST(Reconstruct, ExactAtExtrema) {
  const auto cfg = full_circle();
  const auto bank = FilterBank::build(cfg, kModel);
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const auto scan = make_scan(oracle::random_scan(rng, 360), cfg);
    const auto obs = compress(scan, bank);
    const auto y = filter_1d_circular(scan.samples, bank.lowpass, bank);
    const auto r = reconstruct(obs, cfg, scan.heading);
    for (const auto& e : obs.extrema) {
      const auto idx = static_cast<std::size_t>(angle_to_index(e.phi, cfg));
      EXPECT_EQ(r.samples[idx], e.d);
      EXPECT_NEAR(e.d, std::clamp(y[idx], 0.0, 1.0), 1e-15);
    }
  }
}

TEST(Reconstruct, EightExtremaLinearSegment) {
  const auto cfg = full_circle();
  const auto obs = load_eight_extrema();
  ASSERT_EQ(obs.extrema.size(), 8u);
  const auto r = reconstruct(obs, cfg, 0.0);
  const double expect = 0.42 + (46.0 - 26.0) / (67.0 - 26.0) * (0.074 - 0.42);
  EXPECT_NEAR(r.samples[46], expect, 1e-12);
  // Wrap segment from 342 back to 26.
  const double wrap = 0.08 + (360.0 - 342.0) / (386.0 - 342.0) * (0.42 - 0.08);
  EXPECT_NEAR(r.samples[0], wrap, 1e-12);
}

TEST(Reconstruct, HeadingRotation) {
  const auto cfg = full_circle();
  CompressedObservation obs = load_eight_extrema();
  obs.sender_heading = deg_to_rad(30.0);
  const auto r = reconstruct(obs, cfg, deg_to_rad(10.0));
  // Sender bearing 26 deg appears at 46 deg for the receiver.
  EXPECT_NEAR(r.samples[46], 0.42, 1e-9);
}

TEST(Reconstruct, EmptyObservation) {
  EXPECT_THROW(reconstruct(CompressedObservation{}, full_circle(), 0.0), Error);
}

TEST(Mask3D, ConstantAndEmpty) {
  const auto model = derive_protective_model(0.29, 0.7);
  const DepthCameraConfig cam{deg_to_rad(90.0), deg_to_rad(90.0), 16, 16, 3.0};
  const Grid open(16, 16, 1.0);
  const auto m = extract_safe_mask_3d(open, cam, model);
  const int wc = build_h1(16, cutoff_frequency({cam.h_fov, 16, 3.0, std::nullopt}, model).window).window;
  for (int r = wc / 2; r < 16 - wc / 2; ++r)
    for (int c = wc / 2; c < 16 - wc / 2; ++c) EXPECT_TRUE(m.at(r, c));
  const auto z = extract_safe_mask_3d(Grid(16, 16, 0.0), cam, model);
  for (auto v : z.values) EXPECT_EQ(v, 0);
  EXPECT_THROW(extract_safe_mask_3d(Grid(8, 16, 1.0), cam, model), Error);
}
