#pragma once

#include <cstdint>
#include <vector>

#include "fftnav/world.hpp"

namespace fftnav {

/// Free/occupied grid over the arena with obstacles and walls grown by the
/// inflation radius. Cell (i, j) covers [i*res, (i+1)*res) x [j*res, (j+1)*res).
class OccupancyGrid {
 public:
  OccupancyGrid(const World& world, double resolution, double inflation);
  OccupancyGrid(World&&, double, double) = delete;  // keeps a pointer to the world

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  double resolution() const { return resolution_; }
  double inflation() const { return inflation_; }
  bool free(int i, int j) const;
  Vec2 center(int i, int j) const;
  /// Exact test against the inflated geometry.
  bool point_free(Vec2 p) const;
  bool segment_free(Vec2 a, Vec2 b) const;

 private:
  const World* world_;
  double resolution_;
  double inflation_;
  int cols_;
  int rows_;
  std::vector<std::uint8_t> occupied_;
};

struct PathResult {
  std::vector<Vec2> waypoints;  // start, ..., goal
  double grid_length = 0.0;     // along the raw 8-connected cell path
  double length = 0.0;          // after line-of-sight shortcutting
};

/// 8-connected A* with octile step costs and a Euclidean heuristic, followed
/// by greedy line-of-sight shortcutting against the exact inflated circles.
PathResult astar_path(const OccupancyGrid& grid, Vec2 start, Vec2 goal);

/// Shortest-path length used as the optimal reference. Throws no-path when
/// start or goal lies in inflated space or no route exists.
double astar_optimal(const World& world, Vec2 start, Vec2 goal, double resolution = 0.05, double inflation = 0.15);

}  // namespace fftnav
