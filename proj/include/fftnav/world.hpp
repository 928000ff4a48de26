#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "fftnav/geometry.hpp"
#include "fftnav/perception.hpp"

namespace fftnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  bool operator==(const Vec2&) const = default;
};

struct Circle {
  Vec2 center;
  double radius = 0.0;
  bool operator==(const Circle&) const = default;
};

struct Pose {
  Vec2 position;
  double heading = 0.0;  // rad, world frame, counterclockwise from +x
};

enum class EnvKind { kForest, kRocky };

std::string_view to_string(EnvKind env);
EnvKind parse_env(std::string_view name);

struct RobotSlot {
  Vec2 start;
  Vec2 goal;
  bool operator==(const RobotSlot&) const = default;
};

/// Rectangular arena [0, width] x [0, height] with circular obstacles. The
/// arena boundary is itself an obstacle for sensing and collisions.
struct World {
  std::uint64_t seed = 0;
  EnvKind env = EnvKind::kForest;
  double width = 20.0;
  double height = 20.0;
  std::vector<Circle> obstacles;
  std::vector<RobotSlot> robots;
};

struct WorldParams {
  EnvKind env = EnvKind::kForest;
  double density = 0.2;  // obstacles per m^2 over the whole arena
  double width = 20.0;
  double height = 20.0;
  int robots = 15;
  double robot_spacing = 1.0;   // along the start line, m
  double start_margin = 1.0;    // start line distance from the bottom edge
  double goal_margin = 1.0;     // goal line distance from the top edge
  double slot_clearance = 0.75; // min gap between obstacle surface and any start/goal
  int max_attempts = 20000;     // rejection-sampling budget per obstacle
};

struct RadiusRange {
  double lo;
  double hi;
};

/// Forest trunks U(0.1, 0.3) m, rocky ruins U(0.2, 0.6) m.
RadiusRange obstacle_radius_range(EnvKind env);

/// Deterministic per seed: rejection-sampled non-overlapping circles, start
/// line on the bottom edge, goals straight across on the top edge.
World generate_world(std::uint64_t seed, const WorldParams& params);

/// Distance along a ray to the nearest circle or arena wall. Returns 0 when
/// the origin is inside a circle or outside the arena.
double ray_cast(const World& world, std::span<const Circle> extra, Vec2 origin, double angle, double max_range);

/// Simulated LiDAR: nearest hit per beam, clamped to max_range, normalised;
/// blind-arc beams read exactly 0. `others` are additional occluders (robots).
Scan raycast_scan(const World& world, const Pose& pose, const SensorConfig& cfg, std::span<const Circle> others = {});

/// Versioned text format; obstacle and slot coordinates are written with
/// round-trip precision.
void write_world(std::ostream& os, const World& world);
World read_world(std::istream& is);

}  // namespace fftnav
