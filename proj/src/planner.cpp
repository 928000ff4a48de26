#include "fftnav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fftnav/error.hpp"

namespace fftnav {

std::string_view to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kProposed: return "proposed";
    case PlannerKind::kBugLeft: return "bug-left";
    case PlannerKind::kBugRight: return "bug-right";
  }
  return "?";
}

PlannerKind parse_planner(std::string_view name) {
  if (name == "proposed") return PlannerKind::kProposed;
  if (name == "bug-left") return PlannerKind::kBugLeft;
  if (name == "bug-right") return PlannerKind::kBugRight;
  throw Error(ErrorCode::kBadConfig, "unknown planner '" + std::string(name) + "' (proposed|bug-left|bug-right)");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kToGoal: return "to-goal";
    case Mode::kFollowLeft: return "follow-left";
    case Mode::kFollowRight: return "follow-right";
  }
  return "?";
}

Mode follow_mode(Side side) { return side == Side::kLeft ? Mode::kFollowLeft : Mode::kFollowRight; }

bool following(Mode mode) { return mode != Mode::kToGoal; }

double goal_bearing(const RobotState& robot) {
  const Vec2 g = robot.goal - robot.pose.position;
  return wrap_pi(std::atan2(g.y, g.x) - robot.pose.heading);
}

Side choose_side(const RobotState& robot, const CompressedObservation& own,
                 std::span<const NeighborObservation> inbox, const ProtectiveModel& model,
                 const SensorConfig& cfg, const PlannerParams& params, FusionState* fusion_out) {
  if (params.kind == PlannerKind::kBugLeft) return Side::kLeft;
  if (params.kind == PlannerKind::kBugRight) return Side::kRight;

  const double target = goal_bearing(robot);
  double ps = 0.0;
  if (params.forced_p_self) {
    ps = *params.forced_p_self;
  } else {
    ps = p_self(quadrant_areas(own.extrema, model, wrap_two_pi(target)));
  }

  std::vector<NeighborReport> reports;
  for (const auto& msg : inbox) {
    const double bearing = std::atan2(msg.offset.y, msg.offset.x) - robot.pose.heading;
    const Quadrant q = classify_quadrant(wrap_pi(bearing - target), model);
    if (q == Quadrant::kNone) continue;
    const auto local = rotate_to_frame(msg.observation, robot.pose.heading);
    NeighborReport rep;
    rep.id = msg.id;
    rep.side = is_left(q) ? Side::kLeft : Side::kRight;
    rep.p = local.extrema.empty() ? 0.5 : p_neighbor(local, model, cfg, wrap_two_pi(target));
    rep.distance = msg.offset.norm();
    reports.push_back(rep);
  }
  auto st = fuse(ps, reports, model, cfg, params.fusion);
  const Side side = decide_side(st.p);
  if (fusion_out) *fusion_out = std::move(st);
  return side;
}

namespace {

// Followed-side window relative to the heading (left follow; mirrored for right).
constexpr double kSideBack = deg_to_rad(165.0);
constexpr double kSideFront = deg_to_rad(45.0);

struct Hit {
  int index = -1;
  double range = 0.0;  // m
  Vec2 point;          // world frame
};

// Static returns only: empty beams, the blind arc and known robot bodies are
// dropped.
std::vector<Hit> contour_points(const Scan& scan, Vec2 origin, std::span<const Vec2> bodies, double body_radius) {
  const auto& cfg = scan.config;
  std::vector<Hit> out;
  for (int n = 0; n < cfg.samples; ++n) {
    const double a = index_to_angle(n, cfg);
    const double s = scan.samples[static_cast<std::size_t>(n)];
    if (cfg.in_blind_arc(a) || s >= 1.0) continue;
    const double d = s * cfg.max_range;
    const double world = scan.heading + a;
    const Vec2 rel{d * std::cos(world), d * std::sin(world)};
    bool robot = false;
    for (const auto& b : bodies) robot = robot || (rel - b).norm() < body_radius;
    if (!robot) out.push_back({n, d, origin + rel});
  }
  return out;
}

// Nearest point to the robot within `window` of a bearing.
const Hit* nearest_in_window(const std::vector<Hit>& hits, const SensorConfig& cfg, double bearing, double window) {
  const Hit* best = nullptr;
  for (const auto& h : hits) {
    if (std::abs(wrap_pi(index_to_angle(h.index, cfg) - bearing)) > window) continue;
    if (!best || h.range < best->range) best = &h;
  }
  return best;
}

// Contour point to follow: the nearest return still linked to the tracked
// contour. Once that point has drifted to the wrong side of the robot the
// nearest return on the followed side takes over.
const Hit* track(const std::vector<Hit>& hits, const SensorConfig& cfg, Side side, std::optional<Vec2> anchor,
                 double link, bool fresh) {
  const double lo = side == Side::kLeft ? -kSideBack : -kSideFront;
  const double hi = side == Side::kLeft ? kSideFront : kSideBack;
  auto on_side = [&](const Hit& h) {
    const double a = index_to_angle(h.index, cfg);
    return a >= lo && a <= hi;
  };
  const Hit* linked = nullptr;
  const Hit* any = nullptr;
  for (const auto& h : hits) {
    if (anchor && (h.point - *anchor).norm() <= link && (!linked || h.range < linked->range)) linked = &h;
    if (on_side(h) && (!any || h.range < any->range)) any = &h;
  }
  if (linked && (fresh || on_side(*linked))) return linked;
  return any;
}

// Usable index nearest to `from`, searching mostly counterclockwise (left)
// or clockwise (right) and up to `back` samples the other way. Returns -1
// when nothing is usable.
template <class Usable>
int sweep(const SensorConfig& cfg, int from, Side side, int back, Usable usable) {
  const int m = cfg.samples;
  const int dir = side == Side::kLeft ? 1 : -1;
  auto at = [&](int n) {
    if (cfg.full_circle()) return ((n % m) + m) % m;
    return (n < 0 || n >= m) ? -1 : n;
  };
  for (int k = 0; k < m; ++k) {
    const int fwd = at(from + dir * k);
    if (fwd >= 0 && usable(fwd)) return fwd;
    const int rev = at(from - dir * k);
    if (k > 0 && k <= back && rev >= 0 && usable(rev)) return rev;
  }
  return -1;
}

int index_clamped(double angle, const SensorConfig& cfg) {
  if (cfg.full_circle()) return angle_to_index(angle, cfg);
  const double half = 0.5 * cfg.fov;
  return angle_to_index(std::clamp(angle, -half, half - cfg.resolution()), cfg);
}

// Every return in the robot frame, robots included.
std::vector<Vec2> returns(const Scan& scan) {
  const auto& cfg = scan.config;
  std::vector<Vec2> out;
  for (int n = 0; n < cfg.samples; ++n) {
    const double a = index_to_angle(n, cfg);
    const double s = scan.samples[static_cast<std::size_t>(n)];
    if (cfg.in_blind_arc(a) || s >= 1.0) continue;
    const double d = s * cfg.max_range;
    out.push_back({d * std::cos(a), d * std::sin(a)});
  }
  return out;
}

// Rejects a step that would bring the body within `limit` of any sensed
// point it is not already moving away from. The safe window only covers
// the sector ahead; this catches returns beside the robot.
bool advance_clear(std::span<const Vec2> pts, double angle, double step, double limit) {
  const Vec2 c{step * std::cos(angle), step * std::sin(angle)};
  for (const auto& p : pts) {
    const double after = (p - c).norm();
    if (after < limit && after * after < p.dot(p)) return false;
  }
  return true;
}

bool closes_loop(const RobotState& robot, const PlannerParams& params) {
  const auto n = robot.crumbs.size();
  const auto recent = static_cast<std::size_t>(params.loop_min_travel / params.crumb_spacing);
  for (std::size_t k = 0; k + recent < n; ++k) {
    if ((robot.crumbs[k] - robot.pose.position).norm() < params.loop_radius) return true;
  }
  return false;
}

Action rotate_by(Action act, double angle, double max_turn) {
  act.kind = ActionKind::kRotate;
  act.amount = std::clamp(angle, -max_turn, max_turn);
  return act;
}

}  // namespace

Action step_planner(const RobotState& robot, const Scan& scan, const Perception& perception,
                    std::span<const NeighborObservation> inbox, const ProtectiveModel& model,
                    const PlannerParams& params, std::span<const Vec2> bodies) {
  const auto& cfg = scan.config;
  const auto& safe = perception.safe;
  Action act;
  act.mode = robot.mode;
  act.hit_distance = robot.hit_distance;
  act.anchor = robot.anchor;
  act.turn_to = robot.turn_to;
  const auto hits = contour_points(scan, robot.pose.position, bodies, model.r0 + 0.02);
  const double half_window = 0.5 * cutoff_frequency(cfg, model).window * cfg.resolution();

  const double dist = (robot.goal - robot.pose.position).norm();
  const double bearing = goal_bearing(robot);
  const int ahead = cfg.heading_index();
  const double step = std::min(params.step, dist);
  const auto pts = returns(scan);
  const double limit = model.r0 + params.guard_margin;
  auto usable = [&](int n) {
    return safe.safe_at(n) && advance_clear(pts, index_to_angle(n, cfg) - index_to_angle(ahead, cfg), step, limit);
  };
  const bool goal_safe = safe.safe_at(index_clamped(bearing, cfg)) && advance_clear(pts, bearing, step, limit);

  if (following(act.mode) && dist < act.hit_distance - params.leave_margin) {
    act.mode = Mode::kToGoal;
  }
  if (following(act.mode) && closes_loop(robot, params)) {
    act.mode = act.mode == Mode::kFollowLeft ? Mode::kFollowRight : Mode::kFollowLeft;
    act.hit_distance = dist;
    act.turn_to.reset();
    act.loop = true;
    act.reset_crumbs = true;
  }
  if (act.mode == Mode::kToGoal && !goal_safe) {
    FusionState st;
    const Side side = choose_side(robot, perception.observation, inbox, model, cfg, params,
                                  params.kind == PlannerKind::kProposed ? &st : nullptr);
    if (params.kind == PlannerKind::kProposed) act.fusion = std::move(st);
    act.mode = follow_mode(side);
    act.hit_distance = dist;
    act.encounter = true;
    act.reset_crumbs = true;
    const Hit* blocker = nearest_in_window(hits, cfg, bearing, half_window);
    act.anchor = blocker ? std::optional<Vec2>(blocker->point) : std::nullopt;
  }
  if (act.mode == Mode::kToGoal) {
    act.anchor.reset();
    act.turn_to.reset();
    act.reset_crumbs = act.reset_crumbs || following(robot.mode);
  }
  if (act.turn_to && !act.encounter) {
    // Finish a committed turn before re-planning; the heading was chosen
    // with its whole window in view, so it cannot have become unusable.
    const double rest = wrap_pi(*act.turn_to - robot.pose.heading);
    if (std::abs(rest) > 1e-9) return rotate_by(act, rest, params.max_turn);
  }
  act.turn_to.reset();

  double target = 0.0;
  double tolerance = 1e-9;
  if (act.mode == Mode::kToGoal) {
    target = bearing;
  } else {
    const Side side = act.mode == Mode::kFollowLeft ? Side::kLeft : Side::kRight;
    const double turn = side == Side::kLeft ? 1.0 : -1.0;
    const Hit* near = track(hits, cfg, side, act.anchor, 2.0 * model.r0, act.encounter);
    int from = 0;
    if (!near) {
      act.anchor.reset();
      from = index_clamped(bearing, cfg);
    } else {
      act.anchor = near->point;
      // Tangent to the followed contour, bent toward it when drifting beyond r.
      const double tangent = index_to_angle(near->index, cfg) + turn * kPi / 2;
      const double err = std::clamp(near->range - model.r, 0.0, 0.6);
      from = index_clamped(wrap_pi(tangent - turn * params.standoff_gain * err), cfg);
    }
    const int back = static_cast<int>(std::lround(params.follow_back / cfg.resolution()));
    const int idx = sweep(cfg, from, side, back, usable);
    if (idx < 0) return rotate_by(act, turn * params.max_turn, params.max_turn);
    target = index_to_angle(idx, cfg) - index_to_angle(ahead, cfg);
    tolerance = params.follow_align_tol;
  }

  if (std::abs(target) > tolerance) {
    if (following(act.mode)) act.turn_to = wrap_pi(robot.pose.heading + target);
    return rotate_by(act, target, params.max_turn);
  }
  if (!safe.safe_at(ahead) || !advance_clear(pts, 0.0, step, limit)) {
    if (std::abs(target) > 1e-9) return rotate_by(act, target, params.max_turn);
    const double turn = act.mode == Mode::kFollowRight ? -1.0 : 1.0;
    return rotate_by(act, turn * params.max_turn, params.max_turn);
  }
  act.kind = ActionKind::kAdvance;
  act.amount = step;
  return act;
}

}  // namespace fftnav
