#include "fftnav/world.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "fftnav/error.hpp"

namespace fftnav {

std::string_view to_string(EnvKind env) { return env == EnvKind::kForest ? "forest" : "rocky"; }

EnvKind parse_env(std::string_view name) {
  if (name == "forest") return EnvKind::kForest;
  if (name == "rocky") return EnvKind::kRocky;
  throw Error(ErrorCode::kBadConfig, "unknown environment '" + std::string(name) + "' (forest|rocky)");
}

RadiusRange obstacle_radius_range(EnvKind env) {
  return env == EnvKind::kForest ? RadiusRange{0.1, 0.3} : RadiusRange{0.2, 0.6};
}

namespace {

// std::uniform_real_distribution is implementation-defined; this mapping is
// identical on every standard library.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

}  // namespace

World generate_world(std::uint64_t seed, const WorldParams& p) {
  if (p.density < 0.0 || !(p.width > 0.0) || !(p.height > 0.0) || p.robots < 0) {
    throw Error(ErrorCode::kInvalidArgument, "world parameters out of range");
  }
  World w;
  w.seed = seed;
  w.env = p.env;
  w.width = p.width;
  w.height = p.height;

  const double x0 = 0.5 * p.width - 0.5 * (p.robots - 1) * p.robot_spacing;
  for (int i = 0; i < p.robots; ++i) {
    const double x = x0 + i * p.robot_spacing;
    w.robots.push_back({{x, p.start_margin}, {x, p.height - p.goal_margin}});
  }

  std::mt19937_64 rng(seed);
  const auto count = static_cast<int>(std::lround(p.density * p.width * p.height));
  const auto [rlo, rhi] = obstacle_radius_range(p.env);
  for (int k = 0; k < count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < p.max_attempts && !placed; ++attempt) {
      const double r = uniform(rng, rlo, rhi);
      const Circle c{{uniform(rng, r, p.width - r), uniform(rng, r, p.height - r)}, r};
      bool ok = true;
      for (const auto& slot : w.robots) {
        if ((slot.start - c.center).norm() < r + p.slot_clearance || (slot.goal - c.center).norm() < r + p.slot_clearance) {
          ok = false;
          break;
        }
      }
      for (const auto& o : w.obstacles) {
        if (!ok) break;
        if ((o.center - c.center).norm() < o.radius + r) ok = false;
      }
      if (ok) {
        w.obstacles.push_back(c);
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::kPlacementFailure, "could not place obstacle " + std::to_string(k));
  }
  return w;
}

namespace {

double ray_circle(Vec2 o, Vec2 u, const Circle& c) {
  const Vec2 f = o - c.center;
  const double cc = f.dot(f) - c.radius * c.radius;
  if (cc <= 0.0) return 0.0;
  const double b = f.dot(u);
  if (b > 0.0) return std::numeric_limits<double>::infinity();
  const double disc = b * b - cc;
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  return -b - std::sqrt(disc);
}

double ray_box(Vec2 o, Vec2 u, double width, double height) {
  if (o.x < 0.0 || o.y < 0.0 || o.x > width || o.y > height) return 0.0;
  double t = std::numeric_limits<double>::infinity();
  if (u.x > 0.0) t = std::min(t, (width - o.x) / u.x);
  if (u.x < 0.0) t = std::min(t, -o.x / u.x);
  if (u.y > 0.0) t = std::min(t, (height - o.y) / u.y);
  if (u.y < 0.0) t = std::min(t, -o.y / u.y);
  return t;
}

}  // namespace

double ray_cast(const World& world, std::span<const Circle> extra, Vec2 origin, double angle, double max_range) {
  const Vec2 u{std::cos(angle), std::sin(angle)};
  double t = ray_box(origin, u, world.width, world.height);
  for (const auto& c : world.obstacles) t = std::min(t, ray_circle(origin, u, c));
  for (const auto& c : extra) t = std::min(t, ray_circle(origin, u, c));
  return std::clamp(t, 0.0, max_range);
}

Scan raycast_scan(const World& world, const Pose& pose, const SensorConfig& cfg, std::span<const Circle> others) {
  // Only circles that can intersect the sensing disc matter.
  std::vector<Circle> near;
  const Vec2 o = pose.position;
  auto consider = [&](const Circle& c) {
    if ((c.center - o).norm() - c.radius < cfg.max_range) near.push_back(c);
  };
  for (const auto& c : world.obstacles) consider(c);
  for (const auto& c : others) consider(c);

  Scan scan;
  scan.config = cfg;
  scan.heading = pose.heading;
  scan.samples.resize(static_cast<std::size_t>(cfg.samples));
  const World walls{world.seed, world.env, world.width, world.height, {}, {}};
  for (int n = 0; n < cfg.samples; ++n) {
    const double rel = index_to_angle(n, cfg);
    if (cfg.in_blind_arc(rel)) {
      scan.samples[static_cast<std::size_t>(n)] = 0.0;
      continue;
    }
    const double d = ray_cast(walls, near, o, pose.heading + rel, cfg.max_range);
    scan.samples[static_cast<std::size_t>(n)] = d / cfg.max_range;
  }
  return scan;
}

void write_world(std::ostream& os, const World& w) {
  const auto old = os.precision(17);
  os << "fftnav-world 1\n";
  os << "seed " << w.seed << "\n";
  os << "env " << to_string(w.env) << "\n";
  os << "extent " << w.width << ' ' << w.height << "\n";
  os << "robots " << w.robots.size() << "\n";
  for (const auto& r : w.robots) os << r.start.x << ' ' << r.start.y << ' ' << r.goal.x << ' ' << r.goal.y << "\n";
  os << "obstacles " << w.obstacles.size() << "\n";
  for (const auto& c : w.obstacles) os << c.center.x << ' ' << c.center.y << ' ' << c.radius << "\n";
  os.precision(old);
}

World read_world(std::istream& is) {
  auto expect = [&is](const char* key) {
    std::string k;
    if (!(is >> k) || k != key) throw Error(ErrorCode::kBadConfig, std::string("world file: expected '") + key + "'");
  };
  World w;
  int version = 0;
  expect("fftnav-world");
  if (!(is >> version) || version != 1) throw Error(ErrorCode::kBadConfig, "world file: unsupported version");
  expect("seed");
  is >> w.seed;
  expect("env");
  std::string env;
  is >> env;
  w.env = parse_env(env);
  expect("extent");
  is >> w.width >> w.height;
  expect("robots");
  std::size_t n = 0;
  is >> n;
  w.robots.resize(n);
  for (auto& r : w.robots) is >> r.start.x >> r.start.y >> r.goal.x >> r.goal.y;
  expect("obstacles");
  is >> n;
  w.obstacles.resize(n);
  for (auto& c : w.obstacles) is >> c.center.x >> c.center.y >> c.radius;
  if (!is) throw Error(ErrorCode::kBadConfig, "world file: truncated or malformed numbers");
  return w;
}

}  // namespace fftnav
