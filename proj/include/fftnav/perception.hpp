#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fftnav/filter.hpp"
#include "fftnav/geometry.hpp"

namespace fftnav {

/// Normalised range scan: samples[n] = distance / max_range, in [0, 1].
struct Scan {
  std::vector<double> samples;
  SensorConfig config;
  double heading = 0.0;  // world heading of the sensor, rad
  std::uint64_t stamp = 0;
};

struct AngularInterval {
  double start = 0.0;  // signed angle relative to heading, rad
  double end = 0.0;    // start + (count - 1) * resolution; may exceed pi
  int first_index = 0;
  int count = 0;
};

struct SafeDirections {
  std::vector<AngularInterval> intervals;
  std::vector<std::uint8_t> mask;  // per sample, 1 = safe
  double scale = 0.0;              // planning distance used, m

  bool safe_at(int index) const { return mask[static_cast<std::size_t>(index)] != 0; }
};

enum class ExtremumKind : std::uint8_t { kMin = 0, kMax = 1 };

struct Extremum {
  double phi = 0.0;  // bearing in [0, 2pi), counterclockwise from sender heading
  double d = 0.0;    // filtered normalised distance in [0, 1]
  ExtremumKind kind = ExtremumKind::kMax;

  bool operator==(const Extremum&) const = default;
};

struct CompressedObservation {
  std::uint16_t sender_id = 0;
  double sender_heading = 0.0;  // rad, world frame
  std::vector<Extremum> extrema;  // ordered by phi
};

struct ReconstructedScan {
  std::vector<double> samples;  // piecewise linear between extrema
};

/// Extrema closer than this (normalised units) to the surrounding signal are
/// treated as ripple and not reported.
inline constexpr double kExtremumProminence = 1e-3;
/// Tolerance applied to the safe-direction threshold.
inline constexpr double kSafeThresholdEps = 1e-9;

/// Bearing of a sample index in [0, 2pi); shared by compression and
/// reconstruction so extremum angles land exactly on the sample grid.
double bearing_of_index(int index, const SensorConfig& cfg);

/// Truncated scan t(n) = min(s(n), plan_dist / R) fed to the safe window.
std::vector<double> truncate_scan(std::span<const double> samples, double threshold);

SafeDirections extract_safe_directions(const Scan& scan, const ProtectiveModel& model, const FilterBank& bank);

/// Safe mask from an already filtered safe-window response.
SafeDirections safe_from_response(std::span<const double> response, const SensorConfig& cfg,
                                  const ProtectiveModel& model, int window);

/// Extremum encoding of a lowpass-filtered signal (exposed for tests).
std::vector<Extremum> find_extrema(std::span<const double> filtered, const SensorConfig& cfg);

CompressedObservation compress(const Scan& scan, const FilterBank& bank, std::uint16_t sender_id = 0);

/// Safe directions and compressed observation from one packed FFT pair.
struct Perception {
  SafeDirections safe;
  CompressedObservation observation;
};
Perception perceive(const Scan& scan, const ProtectiveModel& model, const FilterBank& bank,
                    std::uint16_t sender_id = 0);

/// Circular linear interpolation of an extremum profile at a bearing.
double interpolate_profile(std::span<const Extremum> extrema, double bearing);

/// Re-expresses extremum bearings relative to another heading.
CompressedObservation rotate_to_frame(const CompressedObservation& obs, double receiver_heading);

ReconstructedScan reconstruct(const CompressedObservation& obs, const SensorConfig& cfg, double receiver_heading);

struct DepthCameraConfig {
  double h_fov = 0.0;  // rad, spanned by cols
  double v_fov = 0.0;  // rad, spanned by rows
  int rows = 0;
  int cols = 0;
  double max_range = 1.0;
};

struct BoolGrid {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> values;

  bool at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c] != 0; }
};

/// Passable directions of a normalised depth image at the planning distance.
/// Uses the row-then-column separable safe window; border cells where the
/// window does not fit are never passable.
BoolGrid extract_safe_mask_3d(const Grid& depth, const DepthCameraConfig& cam, const ProtectiveModel& model);

}  // namespace fftnav
