#pragma once

#include <array>
#include <numbers>
#include <optional>

namespace fftnav {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);
/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);

/// Physical size model of a robot. Planning distance and safety sector are
/// derived from the two radii and never set independently.
struct ProtectiveModel {
  double r0 = 0.0;         // lateral collision radius, m
  double r = 0.0;          // protective radius, m
  double plan_dist = 0.0;  // l_th = r^2 / r0, m
  double alpha = 0.0;      // safety sector angle, rad
};

ProtectiveModel derive_protective_model(double r0, double r);

/// Angular interval where the sensor reports zero range, given relative to
/// the heading (positive = counterclockwise).
struct BlindArc {
  double center = kPi;
  double width = 0.0;
};

/// Uniformly sampled range sensor. For a full circle the heading is sample 0
/// and index grows counterclockwise; for a partial field of view the heading
/// is sample samples/2 and the samples cover [-fov/2, fov/2).
struct SensorConfig {
  double fov = kTwoPi;
  int samples = 360;
  double max_range = 3.0;
  std::optional<BlindArc> blind_arc;

  bool full_circle() const;
  double resolution() const { return fov / samples; }
  int heading_index() const { return full_circle() ? 0 : samples / 2; }
  bool in_blind_arc(double angle) const;
  void validate() const;
};

/// Signed angle (wrapped to (-pi, pi] for full circles) of a sample index.
double index_to_angle(int index, const SensorConfig& cfg);
/// Nearest sample index for an angle relative to the heading. Throws
/// out-of-fov for partial sensors when the angle falls outside the view.
int angle_to_index(double angle, const SensorConfig& cfg);

/// Observation quadrants relative to the heading: front-left (I), left side
/// (II), right side (III), front-right (IV).
enum class Quadrant { kNone = 0, kFrontLeft = 1, kLeftSide = 2, kRightSide = 3, kFrontRight = 4 };

Quadrant classify_quadrant(double angle, const ProtectiveModel& model);
Quadrant mirror(Quadrant q);
bool is_left(Quadrant q);

struct QuadrantBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Bounds of quadrants I..IV (index 0..3) as signed angles, lo < hi.
std::array<QuadrantBounds, 4> quadrant_bounds(const ProtectiveModel& model);

struct Cutoff {
  double analog = 0.0;   // f0 = fov / alpha
  double digital = 0.0;  // fc = fov / (samples * alpha), cycles/sample
  int window = 0;        // Tc = ceil(1 / fc), samples
};

Cutoff cutoff_frequency(const SensorConfig& cfg, const ProtectiveModel& model);

}  // namespace fftnav
