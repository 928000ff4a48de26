#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fftnav/fusion.hpp"
#include "fftnav/perception.hpp"
#include "fftnav/world.hpp"

namespace fftnav {

enum class PlannerKind { kProposed, kBugLeft, kBugRight };

std::string_view to_string(PlannerKind kind);
PlannerKind parse_planner(std::string_view name);

enum class Mode : std::uint8_t { kToGoal, kFollowLeft, kFollowRight };

std::string_view to_string(Mode mode);
/// kFollowLeft turns left around the obstacle, keeping it on the right.
Mode follow_mode(Side side);
bool following(Mode mode);

struct RobotState {
  int id = 0;
  Pose pose;
  Vec2 goal;
  Mode mode = Mode::kToGoal;
  double hit_distance = std::numeric_limits<double>::infinity();
  std::optional<Vec2> anchor;  // followed contour point, world frame
  std::optional<double> turn_to;  // world heading being rotated to while following
  double follow_travel = 0.0;     // path length since the current follow began, m
  std::vector<Vec2> crumbs;       // follow positions, one per crumb_spacing of travel
};

struct PlannerParams {
  PlannerKind kind = PlannerKind::kProposed;
  double step = 0.05;                       // max advance per tick, m
  double max_turn = deg_to_rad(9.0);        // max rotation per tick
  double follow_align_tol = deg_to_rad(5.0);
  double follow_back = deg_to_rad(15.0);     // search allowance toward the followed contour
  double leave_margin = 0.25;               // progress past the hit point that ends a follow
  double guard_margin = 0.06;               // clearance kept beyond r0 when advancing
  double standoff_gain = deg_to_rad(150.0); // rad per m of standoff error
  double crumb_spacing = 0.25;              // m of follow travel between crumbs
  double loop_radius = 0.1;                 // revisiting a crumb this close closes a loop
  double loop_min_travel = 2.0;             // ignore crumbs laid within this much travel
  FusionParams fusion;
  std::optional<double> forced_p_self;      // replaces the quadrant estimate when set
};

/// A decoded neighbour message plus the sender position relative to the
/// receiver (world frame).
struct NeighborObservation {
  int id = 0;
  Vec2 offset;
  CompressedObservation observation;
};

enum class ActionKind { kHold, kRotate, kAdvance };

struct Action {
  ActionKind kind = ActionKind::kHold;
  double amount = 0.0;  // rad for rotate (counterclockwise positive), m for advance
  Mode mode = Mode::kToGoal;
  double hit_distance = std::numeric_limits<double>::infinity();
  std::optional<Vec2> anchor;
  std::optional<double> turn_to;
  bool encounter = false;
  bool loop = false;           // follow side flipped after revisiting its own track
  bool reset_crumbs = false;   // clear the crumb trail before applying the action
  std::optional<FusionState> fusion;  // set on proposed-planner encounters
};

/// Side chosen at an encounter. Quadrants are laid around the goal bearing.
Side choose_side(const RobotState& robot, const CompressedObservation& own,
                 std::span<const NeighborObservation> inbox, const ProtectiveModel& model,
                 const SensorConfig& cfg, const PlannerParams& params, FusionState* fusion_out = nullptr);

/// Signed goal bearing relative to the robot heading.
double goal_bearing(const RobotState& robot);

/// One Bug-2 decision: head for the goal while its bearing is safe, otherwise
/// follow the blocking obstacle on the chosen side until the goal bearing is
/// safe again and the robot is closer than where it hit.
/// `bodies` are positions of nearby robots relative to this one (world
/// frame); their returns still block motion but are never followed.
Action step_planner(const RobotState& robot, const Scan& scan, const Perception& perception,
                    std::span<const NeighborObservation> inbox, const ProtectiveModel& model,
                    const PlannerParams& params, std::span<const Vec2> bodies = {});

}  // namespace fftnav
