#include "fftnav/experiment.hpp"

#include "fftnav/astar.hpp"
#include "fftnav/error.hpp"

namespace fftnav {

std::vector<World> generate_maps(const ExperimentConfig& cfg) {
  std::vector<World> worlds;
  const auto params = cfg.world_params();
  for (int k = 0; k < cfg.maps; ++k) worlds.push_back(generate_world(cfg.map_seed(k), params));
  return worlds;
}

std::vector<std::vector<double>> optimal_lengths(std::span<const World> worlds, double resolution, double inflation) {
  std::vector<std::vector<double>> out(worlds.size());
  const auto n = static_cast<long>(worlds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto& w = worlds[static_cast<std::size_t>(i)];
    const OccupancyGrid grid(w, resolution, inflation);
    for (const auto& slot : w.robots) out[static_cast<std::size_t>(i)].push_back(astar_path(grid, slot.start, slot.goal).length);
  }
  return out;
}

MetricsReport evaluate(std::span<const EpisodeResult> episodes, const std::vector<std::vector<double>>& optimal) {
  if (episodes.size() != optimal.size()) throw Error(ErrorCode::kLengthMismatch, "one optimal set per episode required");
  std::vector<MetricsRow> rows;
  for (std::size_t e = 0; e < episodes.size(); ++e) {
    const auto& robots = episodes[e].robots;
    if (robots.size() != optimal[e].size()) throw Error(ErrorCode::kLengthMismatch, "one optimal length per robot required");
    for (std::size_t i = 0; i < robots.size(); ++i) {
      rows.push_back({robots[i].arrived, robots[i].path_length, optimal[e][i]});
    }
  }
  return compute_metrics(rows);
}

BatchTotals totals(std::span<const EpisodeResult> episodes) {
  BatchTotals t;
  for (const auto& e : episodes) {
    t.bytes += e.bytes_total;
    for (const auto& r : e.robots) {
      ++t.robots;
      t.collisions += r.collided ? 1 : 0;
      t.unsafe_advances += r.unsafe_advances;
    }
  }
  return t;
}

}  // namespace fftnav
