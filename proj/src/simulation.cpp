#include "fftnav/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fftnav/error.hpp"
#include "fftnav/wire.hpp"

namespace fftnav {

std::string_view to_string(BroadcastPolicy policy) {
  return policy == BroadcastPolicy::kOnEncounter ? "encounter" : "always";
}

BroadcastPolicy parse_broadcast(std::string_view name) {
  if (name == "encounter") return BroadcastPolicy::kOnEncounter;
  if (name == "always") return BroadcastPolicy::kAlways;
  throw Error(ErrorCode::kBadConfig, "unknown broadcast policy '" + std::string(name) + "' (encounter|always)");
}

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfigInvalid, what); };
  if (!(dt > 0.0) || !(v_max > 0.0) || !(turn_rate > 0.0)) fail("dt, v_max and turn_rate must be positive");
  if (!(timeout > 0.0)) fail("timeout must be positive");
  if (!(comm_radius >= 0.0)) fail("comm_radius must be non-negative");
  const auto model = derive_protective_model(r0, r);
  sensor.validate();
  if (!sensor.full_circle()) fail("the simulator needs a full-circle sensor");
  if (v_max * dt > model.plan_dist - r0) fail("per-tick travel must not exceed l_th - r0");
}

namespace {

struct Agent {
  RobotState state;
  RobotOutcome outcome;
  bool active = true;
};

bool collides(const World& w, const std::vector<Agent>& agents, std::size_t self, double r0) {
  const Vec2 p = agents[self].state.pose.position;
  if (p.x < r0 || p.y < r0 || p.x > w.width - r0 || p.y > w.height - r0) return true;
  for (const auto& c : w.obstacles) {
    if ((c.center - p).norm() < r0 + c.radius) return true;
  }
  for (std::size_t j = 0; j < agents.size(); ++j) {
    if (j == self || agents[j].outcome.arrived) continue;
    if ((agents[j].state.pose.position - p).norm() < 2.0 * r0) return true;
  }
  return false;
}

}  // namespace

EpisodeResult run_episode(const World& world, const SimConfig& cfg) {
  cfg.validate();
  const auto model = derive_protective_model(cfg.r0, cfg.r);
  const auto bank = FilterBank::build(cfg.sensor, model);
  PlannerParams params = cfg.planner;
  params.step = cfg.v_max * cfg.dt;
  params.max_turn = cfg.turn_rate * cfg.dt;

  EpisodeResult result;
  result.seed = world.seed;
  result.planner = params.kind;

  std::vector<Agent> agents(world.robots.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& slot = world.robots[i];
    auto& a = agents[i];
    a.state.id = static_cast<int>(i);
    a.state.goal = slot.goal;
    const Vec2 g = slot.goal - slot.start;
    a.state.pose = {slot.start, std::atan2(g.y, g.x)};
    a.outcome.id = static_cast<int>(i);
  }

  const auto n = static_cast<int>(agents.size());
  const auto max_ticks = static_cast<std::uint32_t>(std::ceil(cfg.timeout / cfg.dt));
  std::vector<Scan> scans(agents.size());
  std::vector<Perception> percepts(agents.size());
  std::vector<std::vector<std::uint8_t>> outbox(agents.size());
  std::vector<std::vector<NeighborObservation>> inbox(agents.size());
  std::vector<std::uint32_t> received(agents.size());
  std::vector<Action> actions(agents.size());

  std::uint32_t tick = 0;
  for (; tick < max_ticks; ++tick) {
    bool any = false;
    for (const auto& a : agents) any = any || a.active;
    if (!any) break;

    // Sense: arrived robots have left the arena, collided ones stay put.
    std::vector<Circle> bodies;
    std::vector<int> owner;
    for (const auto& a : agents) {
      if (a.outcome.arrived) continue;
      bodies.push_back({a.state.pose.position, cfg.r0});
      owner.push_back(a.state.id);
    }
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) {
      auto& a = agents[static_cast<std::size_t>(i)];
      outbox[static_cast<std::size_t>(i)].clear();
      if (!a.active) continue;
      std::vector<Circle> others;
      for (std::size_t k = 0; k < bodies.size(); ++k) {
        if (owner[k] != i) others.push_back(bodies[k]);
      }
      auto& scan = scans[static_cast<std::size_t>(i)];
      scan = raycast_scan(world, a.state.pose, cfg.sensor, others);
      scan.stamp = tick;
      percepts[static_cast<std::size_t>(i)] = perceive(scan, model, bank, static_cast<std::uint16_t>(i));
      const auto& safe = percepts[static_cast<std::size_t>(i)].safe;
      const bool blocked = !safe.safe_at(angle_to_index(goal_bearing(a.state), cfg.sensor));
      const bool send = cfg.broadcast == BroadcastPolicy::kAlways || following(a.state.mode) || blocked;
      if (send && params.kind == PlannerKind::kProposed) {
        auto obs = percepts[static_cast<std::size_t>(i)].observation;
        obs.sender_heading = a.state.pose.heading;
        outbox[static_cast<std::size_t>(i)] = wire::encode(obs);
      }
    }

    // Deliver: every payload goes through the wire decoder.
    std::uint32_t tick_bytes = 0;
    for (int i = 0; i < n; ++i) {
      tick_bytes += static_cast<std::uint32_t>(outbox[static_cast<std::size_t>(i)].size());
    }
    result.bytes_total += tick_bytes;
    result.max_tick_bytes = std::max(result.max_tick_bytes, tick_bytes);
    for (int i = 0; i < n; ++i) {
      auto& box = inbox[static_cast<std::size_t>(i)];
      box.clear();
      received[static_cast<std::size_t>(i)] = 0;
      const auto& me = agents[static_cast<std::size_t>(i)];
      if (!me.active) continue;
      for (int j = 0; j < n; ++j) {
        const auto& payload = outbox[static_cast<std::size_t>(j)];
        if (j == i || payload.empty()) continue;
        const Vec2 offset = agents[static_cast<std::size_t>(j)].state.pose.position - me.state.pose.position;
        if (offset.norm() > cfg.comm_radius) continue;
        box.push_back({j, offset, wire::decode(payload)});
        received[static_cast<std::size_t>(i)] += static_cast<std::uint32_t>(payload.size());
      }
    }

    // Plan.
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) {
      const auto& a = agents[static_cast<std::size_t>(i)];
      if (!a.active) continue;
      std::vector<Vec2> near;
      for (const auto& b : bodies) {
        const Vec2 off = b.center - a.state.pose.position;
        const double d = off.norm();
        if (d > 0.0 && d <= cfg.comm_radius) near.push_back(off);
      }
      actions[static_cast<std::size_t>(i)] = step_planner(a.state, scans[static_cast<std::size_t>(i)],
                                                          percepts[static_cast<std::size_t>(i)],
                                                          inbox[static_cast<std::size_t>(i)], model, params, near);
    }

    // Act, then check collisions against the updated poses.
    for (int i = 0; i < n; ++i) {
      auto& a = agents[static_cast<std::size_t>(i)];
      if (!a.active) continue;
      const auto& act = actions[static_cast<std::size_t>(i)];
      a.state.mode = act.mode;
      a.state.hit_distance = act.hit_distance;
      a.state.anchor = act.anchor;
      a.state.turn_to = act.turn_to;
      if (act.reset_crumbs) {
        a.state.crumbs.clear();
        a.state.follow_travel = 0.0;
      }
      if (act.encounter) ++a.outcome.encounters;
      if (act.kind == ActionKind::kRotate) {
        a.state.pose.heading = wrap_pi(a.state.pose.heading + act.amount);
      } else if (act.kind == ActionKind::kAdvance) {
        if (!percepts[static_cast<std::size_t>(i)].safe.safe_at(cfg.sensor.heading_index())) {
          ++a.outcome.unsafe_advances;
        }
        const Vec2 to_goal = a.state.goal - a.state.pose.position;
        if (act.amount >= to_goal.norm()) {
          a.outcome.path_length += to_goal.norm();
          a.state.pose.position = a.state.goal;
          a.outcome.arrived = true;
        } else {
          const double h = a.state.pose.heading;
          a.state.pose.position = a.state.pose.position + Vec2{std::cos(h), std::sin(h)} * act.amount;
          a.outcome.path_length += act.amount;
          if (following(a.state.mode)) {
            a.state.follow_travel += act.amount;
            const auto due = static_cast<std::size_t>(a.state.follow_travel / params.crumb_spacing + 1e-9);
            if (a.state.crumbs.size() < due) a.state.crumbs.push_back(a.state.pose.position);
          }
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      auto& a = agents[static_cast<std::size_t>(i)];
      if (!a.active) continue;
      if (a.outcome.arrived) {
        a.active = false;
      } else if (collides(world, agents, static_cast<std::size_t>(i), cfg.r0)) {
        a.outcome.collided = true;
        a.active = false;
      }
      a.outcome.time = (tick + 1) * cfg.dt;
      if (cfg.record_trace) {
        const auto& act = actions[static_cast<std::size_t>(i)];
        TickRecord rec;
        rec.tick = tick;
        rec.id = static_cast<std::uint16_t>(i);
        rec.x = a.state.pose.position.x;
        rec.y = a.state.pose.position.y;
        rec.heading = a.state.pose.heading;
        rec.mode = a.state.mode;
        rec.action = act.kind;
        rec.p = act.fusion ? act.fusion->p : -1.0;
        rec.bytes_sent = static_cast<std::uint32_t>(outbox[static_cast<std::size_t>(i)].size());
        rec.bytes_received = received[static_cast<std::size_t>(i)];
        rec.collided = a.outcome.collided;
        rec.arrived = a.outcome.arrived;
        result.trace.push_back(rec);
      }
    }
  }
  result.ticks = tick;
  for (auto& a : agents) result.robots.push_back(a.outcome);
  return result;
}

std::vector<EpisodeResult> run_batch(std::span<const World> worlds, const SimConfig& cfg) {
  cfg.validate();
  std::vector<EpisodeResult> out(worlds.size());
  const auto n = static_cast<long>(worlds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_episode(worlds[static_cast<std::size_t>(i)], cfg);
  return out;
}

std::vector<EpisodeResult> run_batch_serial(std::span<const World> worlds, const SimConfig& cfg) {
  std::vector<EpisodeResult> out;
  out.reserve(worlds.size());
  for (const auto& w : worlds) out.push_back(run_episode(w, cfg));
  return out;
}

void write_trace(std::ostream& os, const EpisodeResult& r) {
  static constexpr const char* kActionNames[] = {"hold", "rotate", "advance"};
  os << "# fftnav-trace 1 seed=" << r.seed << " planner=" << to_string(r.planner) << "\n";
  os << "tick,id,x,y,heading,mode,action,p,bytes_sent,bytes_received,collided,arrived\n";
  char buf[256];
  for (const auto& t : r.trace) {
    char p[32] = "";
    if (t.p >= 0.0) std::snprintf(p, sizeof p, "%.6f", t.p);
    std::snprintf(buf, sizeof buf, "%u,%u,%.6f,%.6f,%.6f,%s,%s,%s,%u,%u,%d,%d\n", t.tick, t.id, t.x, t.y,
                  t.heading, std::string(to_string(t.mode)).c_str(), kActionNames[static_cast<int>(t.action)], p, t.bytes_sent, t.bytes_received, t.collided ? 1 : 0,
                  t.arrived ? 1 : 0);
    os << buf;
  }
}

}  // namespace fftnav
