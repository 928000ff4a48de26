#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "fftnav/simulation.hpp"
#include "fftnav/world.hpp"

namespace fftnav {

/// Every experiment parameter, defaulted to the reproduction setup.
struct ExperimentConfig {
  EnvKind env = EnvKind::kForest;
  int maps = 20;
  std::uint64_t seed = 7;  // map k uses seed + k
  int robots = 15;
  PlannerKind planner = PlannerKind::kProposed;

  double r0 = 0.15;
  double r = 0.3;
  double max_range = 3.0;
  int samples = 360;
  double fov_deg = 360.0;
  double blind_deg = 15.0;

  double width = 20.0;
  double height = 20.0;
  double density = 0.2;
  double robot_spacing = 1.0;

  double dt = 0.1;
  double v_max = 0.5;
  double turn_rate_deg = 90.0;
  double timeout = 360.0;
  double comm_radius = 3.0;
  BroadcastPolicy broadcast = BroadcastPolicy::kOnEncounter;
  double self_factor = 3.0;

  double astar_resolution = 0.05;

  WorldParams world_params() const;
  SimConfig sim_config() const;
  std::uint64_t map_seed(int k) const { return seed + static_cast<std::uint64_t>(k); }
  void validate() const;
};

std::string to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg);

/// FFTNAV_OUTPUT_DIR if set, otherwise `fallback`.
std::filesystem::path output_dir(const std::filesystem::path& fallback);

}  // namespace fftnav
