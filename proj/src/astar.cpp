#include "fftnav/astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fftnav/error.hpp"

namespace fftnav {

OccupancyGrid::OccupancyGrid(const World& world, double resolution, double inflation)
    : world_(&world), resolution_(resolution), inflation_(inflation) {
  if (!(resolution > 0.0) || inflation < 0.0) throw Error(ErrorCode::kInvalidArgument, "bad grid resolution");
  cols_ = static_cast<int>(std::ceil(world.width / resolution - 1e-9));
  rows_ = static_cast<int>(std::ceil(world.height / resolution - 1e-9));
  occupied_.assign(static_cast<std::size_t>(cols_) * rows_, 0);
  for (int j = 0; j < rows_; ++j) {
    for (int i = 0; i < cols_; ++i) {
      occupied_[static_cast<std::size_t>(j) * cols_ + i] = point_free(center(i, j)) ? 0 : 1;
    }
  }
}

bool OccupancyGrid::free(int i, int j) const {
  if (i < 0 || j < 0 || i >= cols_ || j >= rows_) return false;
  return occupied_[static_cast<std::size_t>(j) * cols_ + i] == 0;
}

Vec2 OccupancyGrid::center(int i, int j) const { return {(i + 0.5) * resolution_, (j + 0.5) * resolution_}; }

bool OccupancyGrid::point_free(Vec2 p) const {
  const double m = inflation_;
  if (p.x < m || p.y < m || p.x > world_->width - m || p.y > world_->height - m) return false;
  for (const auto& c : world_->obstacles) {
    if ((p - c.center).norm() < c.radius + m) return false;
  }
  return true;
}

bool OccupancyGrid::segment_free(Vec2 a, Vec2 b) const {
  if (!point_free(a) || !point_free(b)) return false;
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  for (const auto& c : world_->obstacles) {
    double t = len2 > 0.0 ? (c.center - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if ((a + ab * t - c.center).norm() < c.radius + inflation_) return false;
  }
  return true;
}

PathResult astar_path(const OccupancyGrid& grid, Vec2 start, Vec2 goal) {
  if (!grid.point_free(start) || !grid.point_free(goal)) {
    throw Error(ErrorCode::kNoPath, "start or goal lies inside inflated obstacle space");
  }
  const double res = grid.resolution();
  const int cols = grid.cols();
  auto cell_of = [&](Vec2 p) {
    return std::pair{std::clamp(static_cast<int>(p.x / res), 0, cols - 1),
                     std::clamp(static_cast<int>(p.y / res), 0, grid.rows() - 1)};
  };
  const auto [si, sj] = cell_of(start);
  const auto [gi, gj] = cell_of(goal);
  if (!grid.free(si, sj) || !grid.free(gi, gj)) throw Error(ErrorCode::kNoPath, "start or goal cell is occupied");

  const std::size_t total = static_cast<std::size_t>(cols) * grid.rows();
  std::vector<double> g(total, std::numeric_limits<double>::infinity());
  std::vector<int> parent(total, -1);
  std::vector<std::uint8_t> closed(total, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const Vec2 gc = grid.center(gi, gj);
  auto h = [&](int i, int j) { return (grid.center(i, j) - gc).norm(); };
  const int s = sj * cols + si;
  const int t = gj * cols + gi;
  g[static_cast<std::size_t>(s)] = 0.0;
  open.push({h(si, sj), s});
  static constexpr int kDi[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const double diag = res * std::sqrt(2.0);
  while (!open.empty()) {
    const int u = open.top().second;
    open.pop();
    if (closed[static_cast<std::size_t>(u)]) continue;
    closed[static_cast<std::size_t>(u)] = 1;
    if (u == t) break;
    const int ui = u % cols;
    const int uj = u / cols;
    for (int k = 0; k < 8; ++k) {
      const int vi = ui + kDi[k];
      const int vj = uj + kDj[k];
      if (!grid.free(vi, vj)) continue;
      // No corner cutting through occupied cells.
      if (k >= 4 && (!grid.free(ui + kDi[k], uj) || !grid.free(ui, uj + kDj[k]))) continue;
      const int v = vj * cols + vi;
      const double cand = g[static_cast<std::size_t>(u)] + (k < 4 ? res : diag);
      if (cand < g[static_cast<std::size_t>(v)]) {
        g[static_cast<std::size_t>(v)] = cand;
        parent[static_cast<std::size_t>(v)] = u;
        open.push({cand + h(vi, vj), v});
      }
    }
  }
  if (!closed[static_cast<std::size_t>(t)]) throw Error(ErrorCode::kNoPath, "goal unreachable");

  std::vector<Vec2> cells;
  for (int v = t; v != -1; v = parent[static_cast<std::size_t>(v)]) cells.push_back(grid.center(v % cols, v / cols));
  std::reverse(cells.begin(), cells.end());

  PathResult out;
  out.grid_length = g[static_cast<std::size_t>(t)];
  std::vector<Vec2> pts;
  pts.push_back(start);
  pts.insert(pts.end(), cells.begin(), cells.end());
  pts.push_back(goal);

  out.waypoints.push_back(start);
  std::size_t anchor = 0;
  std::size_t k = 1;
  while (k < pts.size()) {
    std::size_t reach = k;
    while (reach + 1 < pts.size() && grid.segment_free(pts[anchor], pts[reach + 1])) ++reach;
    out.waypoints.push_back(pts[reach]);
    anchor = reach;
    k = reach + 1;
  }
  for (std::size_t i = 0; i + 1 < out.waypoints.size(); ++i) {
    out.length += (out.waypoints[i + 1] - out.waypoints[i]).norm();
  }
  return out;
}

double astar_optimal(const World& world, Vec2 start, Vec2 goal, double resolution, double inflation) {
  const OccupancyGrid grid(world, resolution, inflation);
  return astar_path(grid, start, goal).length;
}

}  // namespace fftnav
