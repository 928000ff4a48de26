#include "fftnav/geometry.hpp"

#include <cmath>

#include "fftnav/error.hpp"

namespace fftnav {

double wrap_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

ProtectiveModel derive_protective_model(double r0, double r) {
  if (!(r0 > 0.0) || !(r >= r0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidRadii, "need 0 < r0 <= r");
  }
  ProtectiveModel m;
  m.r0 = r0;
  m.r = r;
  m.plan_dist = r * r / r0;
  m.alpha = kPi - 2.0 * std::acos(r0 / r);
  return m;
}

bool SensorConfig::full_circle() const { return std::abs(fov - kTwoPi) < 1e-12; }

bool SensorConfig::in_blind_arc(double angle) const {
  if (!blind_arc) return false;
  return std::abs(wrap_pi(angle - blind_arc->center)) <= 0.5 * blind_arc->width + 1e-12;
}

void SensorConfig::validate() const {
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "sensor needs at least 2 samples");
  if (!(max_range > 0.0)) throw Error(ErrorCode::kInvalidArgument, "max range must be positive");
  if (!(fov > 0.0) || fov > kTwoPi + 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "field of view must be in (0, 2pi]");
  }
}

double index_to_angle(int index, const SensorConfig& cfg) {
  const double a = (index - cfg.heading_index()) * cfg.resolution();
  return cfg.full_circle() ? wrap_pi(a) : a;
}

int angle_to_index(double angle, const SensorConfig& cfg) {
  const int m = cfg.samples;
  if (cfg.full_circle()) {
    const auto n = static_cast<long>(std::lround(wrap_two_pi(angle) / cfg.resolution()));
    return static_cast<int>(n % m);
  }
  const auto n = cfg.heading_index() + std::lround(angle / cfg.resolution());
  if (n < 0 || n >= m) throw Error(ErrorCode::kOutOfFov, "angle outside field of view");
  return static_cast<int>(n);
}

Quadrant classify_quadrant(double angle, const ProtectiveModel& model) {
  const double half = 0.5 * model.alpha;
  const double a = wrap_pi(angle);
  if (a > 0.0 && a <= half) return Quadrant::kFrontLeft;
  if (a > half && a <= kPi / 2) return Quadrant::kLeftSide;
  if (a < 0.0 && a >= -half) return Quadrant::kFrontRight;
  if (a < -half && a >= -kPi / 2) return Quadrant::kRightSide;
  return Quadrant::kNone;
}

Quadrant mirror(Quadrant q) {
  switch (q) {
    case Quadrant::kFrontLeft: return Quadrant::kFrontRight;
    case Quadrant::kLeftSide: return Quadrant::kRightSide;
    case Quadrant::kRightSide: return Quadrant::kLeftSide;
    case Quadrant::kFrontRight: return Quadrant::kFrontLeft;
    case Quadrant::kNone: return Quadrant::kNone;
  }
  return Quadrant::kNone;
}

bool is_left(Quadrant q) { return q == Quadrant::kFrontLeft || q == Quadrant::kLeftSide; }

std::array<QuadrantBounds, 4> quadrant_bounds(const ProtectiveModel& model) {
  const double half = 0.5 * model.alpha;
  return {{{0.0, half}, {half, kPi / 2}, {-kPi / 2, -half}, {-half, 0.0}}};
}

Cutoff cutoff_frequency(const SensorConfig& cfg, const ProtectiveModel& model) {
  if (!(model.alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  Cutoff c;
  c.analog = cfg.fov / model.alpha;
  c.digital = cfg.fov / (cfg.samples * model.alpha);
  // 1/fc is often an exact integer in theory; absorb the round-off.
  c.window = static_cast<int>(std::ceil(1.0 / c.digital - 1e-9));
  return c;
}

}  // namespace fftnav
