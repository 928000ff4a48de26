#pragma once

#include <span>
#include <vector>

#include "fftnav/config.hpp"
#include "fftnav/metrics.hpp"
#include "fftnav/simulation.hpp"

namespace fftnav {

std::vector<World> generate_maps(const ExperimentConfig& cfg);

/// A* reference length for every robot slot of every world (maps in parallel).
std::vector<std::vector<double>> optimal_lengths(std::span<const World> worlds, double resolution, double inflation);

/// Metrics over all robots of all episodes.
MetricsReport evaluate(std::span<const EpisodeResult> episodes, const std::vector<std::vector<double>>& optimal);

struct BatchTotals {
  int robots = 0;
  int collisions = 0;
  int unsafe_advances = 0;
  std::uint64_t bytes = 0;
};

BatchTotals totals(std::span<const EpisodeResult> episodes);

}  // namespace fftnav
