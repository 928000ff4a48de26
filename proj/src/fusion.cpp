#include "fftnav/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace fftnav {

QuadrantAreas quadrant_areas(std::span<const Extremum> extrema, const ProtectiveModel& model, double reference) {
  QuadrantAreas x0{};
  if (extrema.empty()) return x0;
  const auto bounds = quadrant_bounds(model);
  struct Vertex {
    double angle;
    double d;
  };
  std::vector<Vertex> poly;
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    const auto [lo, hi] = bounds[k];
    poly.clear();
    poly.push_back({lo, interpolate_profile(extrema, reference + lo)});
    for (const auto& e : extrema) {
      const double a = wrap_pi(e.phi - reference);
      if (a > lo && a < hi) poly.push_back({a, e.d});
    }
    poly.push_back({hi, interpolate_profile(extrema, reference + hi)});
    std::sort(poly.begin() + 1, poly.end() - 1, [](const Vertex& a, const Vertex& b) { return a.angle < b.angle; });
    double area = 0.0;
    for (std::size_t j = 0; j + 1 < poly.size(); ++j) {
      area += 0.5 * poly[j].d * poly[j + 1].d * std::sin(poly[j + 1].angle - poly[j].angle);
    }
    x0[k] = area;
  }
  return x0;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double p_self(const QuadrantAreas& x0, double w_s, double b0) {
  const double inside = w_s / (1.0 + w_s);
  const double outside = 1.0 / (1.0 + w_s);
  // Pair the antisymmetric weights so mirrored inputs cancel exactly.
  const double z = inside * (x0[0] - x0[3]) + outside * (x0[1] - x0[2]) + b0;
  return sigmoid(z);
}

double neighbor_threshold(const ProtectiveModel& model, const SensorConfig& cfg) {
  return -(2.0 * (model.plan_dist + model.r) + model.r0) / cfg.max_range;
}

double neighbor_passability(const CompressedObservation& obs, const ProtectiveModel& model, double target_direction) {
  const double half = 0.5 * model.alpha;
  bool any = false;
  bool has_min = false;
  double hi = 0.0;
  double lo = 1.0;
  for (const auto& e : obs.extrema) {
    if (std::abs(wrap_pi(e.phi - target_direction)) > half) continue;
    any = true;
    has_min = has_min || e.kind == ExtremumKind::kMin;
    hi = std::max(hi, e.d);
    lo = std::min(lo, e.d);
  }
  if (!any) {
    return std::max(interpolate_profile(obs.extrema, target_direction - half),
                    interpolate_profile(obs.extrema, target_direction + half));
  }
  return has_min ? 0.5 * (hi + lo) : hi;
}

double p_neighbor(const CompressedObservation& obs, const ProtectiveModel& model, const SensorConfig& cfg,
                  double target_direction) {
  return sigmoid(neighbor_passability(obs, model, target_direction) + neighbor_threshold(model, cfg));
}

FusionState fuse(double p_s, std::span<const NeighborReport> neighbors, const ProtectiveModel& model,
                 const SensorConfig& cfg, const FusionParams& params) {
  FusionState st;
  st.p_self = p_s;
  int kept = 0;
  for (const auto& n : neighbors) {
    FusionEntry e{n, 0.0, false};
    e.excluded = !params.use_neighbors || n.distance < 2.0 * model.r || n.distance > cfg.max_range;
    if (!e.excluded) ++kept;
    st.neighbors.push_back(e);
  }
  st.self_weight = params.self_factor / (params.self_factor + kept);
  const double w = 1.0 / (params.self_factor + kept);

  // Centred form of w0*Ps + sum w_i P_i + sum w_i (1 - P_i): with weights
  // summing to one the constant 0.5 factors out, which keeps mirrored scenes
  // exactly complementary. Per-side sums are taken in sorted order.
  std::vector<double> left;
  std::vector<double> right;
  for (auto& e : st.neighbors) {
    if (e.excluded) continue;
    e.weight = w;
    (e.report.side == Side::kLeft ? left : right).push_back(e.report.p - 0.5);
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  double sl = 0.0;
  double sr = 0.0;
  for (double v : left) sl += v;
  for (double v : right) sr += v;
  const double p = 0.5 + st.self_weight * (p_s - 0.5) + w * (sl - sr);
  st.p = std::clamp(p, 0.0, 1.0);
  return st;
}

Side decide_side(double p) { return p >= 0.5 ? Side::kLeft : Side::kRight; }

}  // namespace fftnav
