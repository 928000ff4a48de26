#include "fftnav/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "fftnav/error.hpp"

namespace fftnav {

WorldParams ExperimentConfig::world_params() const {
  WorldParams p;
  p.env = env;
  p.density = density;
  p.width = width;
  p.height = height;
  p.robots = robots;
  p.robot_spacing = robot_spacing;
  return p;
}

SimConfig ExperimentConfig::sim_config() const {
  SimConfig s;
  s.r0 = r0;
  s.r = r;
  s.sensor.fov = deg_to_rad(fov_deg);
  s.sensor.samples = samples;
  s.sensor.max_range = max_range;
  if (blind_deg > 0.0) {
    s.sensor.blind_arc = BlindArc{kPi, deg_to_rad(blind_deg)};
  } else {
    s.sensor.blind_arc.reset();
  }
  s.dt = dt;
  s.v_max = v_max;
  s.turn_rate = deg_to_rad(turn_rate_deg);
  s.timeout = timeout;
  s.comm_radius = comm_radius;
  s.broadcast = broadcast;
  s.planner.kind = planner;
  s.planner.fusion.self_factor = self_factor;
  return s;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kBadConfig, what); };
  if (maps < 0) fail("maps must be >= 0");
  if (robots < 0 || robots > 65535) fail("robots must be in [0, 65535]");
  if (!(density >= 0.0)) fail("density must be >= 0");
  if (!(self_factor > 0.0)) fail("self_factor must be positive");
  if (!(astar_resolution > 0.0)) fail("astar_resolution must be positive");
  try {
    sim_config().validate();
  } catch (const Error& e) {
    fail(e.what());
  }
}

namespace {

using nlohmann::json;

json to_j(const ExperimentConfig& c) {
  return json{{"env", std::string(to_string(c.env))},
              {"maps", c.maps},
              {"seed", c.seed},
              {"robots", c.robots},
              {"planner", std::string(to_string(c.planner))},
              {"r0", c.r0},
              {"r", c.r},
              {"max_range", c.max_range},
              {"samples", c.samples},
              {"fov_deg", c.fov_deg},
              {"blind_deg", c.blind_deg},
              {"width", c.width},
              {"height", c.height},
              {"density", c.density},
              {"robot_spacing", c.robot_spacing},
              {"dt", c.dt},
              {"v_max", c.v_max},
              {"turn_rate_deg", c.turn_rate_deg},
              {"timeout", c.timeout},
              {"comm_radius", c.comm_radius},
              {"broadcast", std::string(to_string(c.broadcast))},
              {"self_factor", c.self_factor},
              {"astar_resolution", c.astar_resolution}};
}

}  // namespace

std::string to_json(const ExperimentConfig& cfg) { return to_j(cfg).dump(2) + "\n"; }

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kBadConfig, "config must be a JSON object");
  ExperimentConfig c;
  const json defaults = to_j(c);
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) throw Error(ErrorCode::kBadConfig, "unknown config key '" + key + "'");
  }
  try {
    auto get = [&j](const char* key, auto& out) {
      if (j.contains(key)) j.at(key).get_to(out);
    };
    if (j.contains("env")) c.env = parse_env(j.at("env").get<std::string>());
    if (j.contains("planner")) c.planner = parse_planner(j.at("planner").get<std::string>());
    if (j.contains("broadcast")) c.broadcast = parse_broadcast(j.at("broadcast").get<std::string>());
    get("maps", c.maps);
    get("seed", c.seed);
    get("robots", c.robots);
    get("r0", c.r0);
    get("r", c.r);
    get("max_range", c.max_range);
    get("samples", c.samples);
    get("fov_deg", c.fov_deg);
    get("blind_deg", c.blind_deg);
    get("width", c.width);
    get("height", c.height);
    get("density", c.density);
    get("robot_spacing", c.robot_spacing);
    get("dt", c.dt);
    get("v_max", c.v_max);
    get("turn_rate_deg", c.turn_rate_deg);
    get("timeout", c.timeout);
    get("comm_radius", c.comm_radius);
    get("self_factor", c.self_factor);
    get("astar_resolution", c.astar_resolution);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadConfig, std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kMissingFile, "cannot write config file " + path.string());
  out << to_json(cfg);
}

std::filesystem::path output_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("FFTNAV_OUTPUT_DIR"); env && *env) return env;
  return fallback;
}

}  // namespace fftnav
