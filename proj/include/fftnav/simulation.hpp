#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "fftnav/planner.hpp"
#include "fftnav/world.hpp"

namespace fftnav {

enum class BroadcastPolicy { kOnEncounter, kAlways };

std::string_view to_string(BroadcastPolicy policy);
BroadcastPolicy parse_broadcast(std::string_view name);

struct SimConfig {
  double r0 = 0.15;
  double r = 0.3;
  SensorConfig sensor{kTwoPi, 360, 3.0, BlindArc{kPi, deg_to_rad(15.0)}};
  double dt = 0.1;                        // s
  double v_max = 0.5;                     // m/s
  double turn_rate = deg_to_rad(90.0);    // rad/s
  double timeout = 360.0;                 // simulated s
  double comm_radius = 3.0;               // m
  BroadcastPolicy broadcast = BroadcastPolicy::kOnEncounter;
  PlannerParams planner;                  // step and max_turn are derived from the rates above
  bool record_trace = true;

  void validate() const;
};

struct TickRecord {
  std::uint32_t tick = 0;
  std::uint16_t id = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  Mode mode = Mode::kToGoal;
  ActionKind action = ActionKind::kHold;
  double p = -1.0;  // fused turn-left probability at an encounter, -1 otherwise
  std::uint32_t bytes_sent = 0;
  std::uint32_t bytes_received = 0;
  bool collided = false;
  bool arrived = false;
};

struct RobotOutcome {
  int id = 0;
  bool arrived = false;
  bool collided = false;
  double path_length = 0.0;  // m
  double time = 0.0;         // s until arrival or end of episode
  int encounters = 0;
  int unsafe_advances = 0;   // advances with the heading outside every safe interval
};

struct EpisodeResult {
  std::uint64_t seed = 0;
  PlannerKind planner = PlannerKind::kProposed;
  std::uint32_t ticks = 0;
  std::vector<RobotOutcome> robots;
  std::vector<TickRecord> trace;
  std::uint64_t bytes_total = 0;
  std::uint32_t max_tick_bytes = 0;  // largest per-tick broadcast volume
};

EpisodeResult run_episode(const World& world, const SimConfig& cfg);

/// Episodes for several worlds, maps in parallel; results are in input order.
std::vector<EpisodeResult> run_batch(std::span<const World> worlds, const SimConfig& cfg);
std::vector<EpisodeResult> run_batch_serial(std::span<const World> worlds, const SimConfig& cfg);

/// CSV trace, one row per robot per tick, prefixed by a version line.
void write_trace(std::ostream& os, const EpisodeResult& result);

}  // namespace fftnav
