#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fftnav/astar.hpp"
#include "fftnav/bench.hpp"
#include "fftnav/config.hpp"
#include "fftnav/error.hpp"
#include "fftnav/experiment.hpp"
#include "fftnav/metrics.hpp"
#include "fftnav/simulation.hpp"
#include "fftnav/world.hpp"

namespace fs = std::filesystem;
using namespace fftnav;

namespace {

// Flags shared by gen-maps and run; unset flags leave the config value alone.
struct Overrides {
  std::string config;
  std::optional<std::string> env;
  std::optional<std::string> planner;
  std::optional<std::string> broadcast;
  std::optional<int> maps;
  std::optional<int> robots;
  std::optional<std::uint64_t> seed;
  std::optional<double> timeout;

  ExperimentConfig resolve() const {
    ExperimentConfig c = config.empty() ? ExperimentConfig{} : load_config(config);
    if (env) c.env = parse_env(*env);
    if (planner) c.planner = parse_planner(*planner);
    if (broadcast) c.broadcast = parse_broadcast(*broadcast);
    if (maps) c.maps = *maps;
    if (robots) c.robots = *robots;
    if (seed) c.seed = *seed;
    if (timeout) c.timeout = *timeout;
    c.validate();
    return c;
  }
};

void add_common(CLI::App* app, Overrides& o, bool with_planner) {
  app->add_option("--config", o.config, "JSON experiment config");
  app->add_option("--env", o.env, "forest | rocky");
  app->add_option("--maps", o.maps, "number of maps");
  app->add_option("--robots", o.robots, "robots per map");
  app->add_option("--seed", o.seed, "base seed, map k uses seed + k");
  if (with_planner) {
    app->add_option("--planner", o.planner, "proposed | bug-left | bug-right");
    app->add_option("--broadcast", o.broadcast, "encounter | always");
    app->add_option("--timeout", o.timeout, "episode timeout, simulated s");
  }
}

std::string map_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "map_%03d", k);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::kMissingFile, "cannot write " + p.string());
  return out;
}

void write_maps(const std::vector<World>& worlds, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t k = 0; k < worlds.size(); ++k) {
    auto out = open_out(dir / (map_name(static_cast<int>(k)) + ".txt"));
    write_world(out, worlds[k]);
  }
}

std::vector<World> read_maps(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kMissingFile, "no maps directory at " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<World> worlds;
  for (const auto& f : files) {
    std::ifstream in(f);
    worlds.push_back(read_world(in));
  }
  return worlds;
}

int cmd_gen_maps(const Overrides& o, std::string out_dir) {
  const auto cfg = o.resolve();
  const fs::path dir = out_dir.empty() ? output_dir("out") / ("maps-" + std::string(to_string(cfg.env))) : fs::path(out_dir);
  const auto worlds = generate_maps(cfg);
  write_maps(worlds, dir);
  std::cout << "wrote " << worlds.size() << " maps to " << dir.string() << "\n";
  return 0;
}

int cmd_run(const Overrides& o, std::string out_dir, bool no_trace) {
  const auto cfg = o.resolve();
  const fs::path dir = out_dir.empty()
                           ? output_dir("out") / (std::string(to_string(cfg.env)) + "-" + std::string(to_string(cfg.planner)))
                           : fs::path(out_dir);
  fs::create_directories(dir / "traces");
  save_config(dir / "config.json", cfg);

  const auto worlds = generate_maps(cfg);
  write_maps(worlds, dir / "maps");
  auto sim = cfg.sim_config();
  sim.record_trace = !no_trace;
  const auto episodes = run_batch(worlds, sim);

  auto results = open_out(dir / "results.csv");
  results << "map,seed,id,arrived,collided,path_length,time,encounters,unsafe_advances\n";
  for (std::size_t k = 0; k < episodes.size(); ++k) {
    const auto& ep = episodes[k];
    if (!no_trace) {
      auto tr = open_out(dir / "traces" / (map_name(static_cast<int>(k)) + ".csv"));
      write_trace(tr, ep);
    }
    for (const auto& r : ep.robots) {
      char line[160];
      std::snprintf(line, sizeof line, "%zu,%llu,%d,%d,%d,%.6f,%.3f,%d,%d\n", k,
                    static_cast<unsigned long long>(ep.seed), r.id, r.arrived ? 1 : 0, r.collided ? 1 : 0,
                    r.path_length, r.time, r.encounters, r.unsafe_advances);
      results << line;
    }
  }

  const auto t = totals(episodes);
  int arrived = 0;
  for (const auto& ep : episodes)
    for (const auto& r : ep.robots) arrived += r.arrived ? 1 : 0;
  nlohmann::json summary{{"env", std::string(to_string(cfg.env))},
                         {"planner", std::string(to_string(cfg.planner))},
                         {"maps", cfg.maps},
                         {"robots", t.robots},
                         {"arrived", arrived},
                         {"collisions", t.collisions},
                         {"unsafe_advances", t.unsafe_advances},
                         {"bytes_total", t.bytes}};
  open_out(dir / "summary.json") << summary.dump(2) << "\n";
  std::cout << "ran " << episodes.size() << " episodes: " << arrived << "/" << t.robots << " arrived, "
            << t.collisions << " collisions -> " << dir.string() << "\n";
  return 0;
}

struct TableRow {
  std::string env;
  std::string method;
  MetricsReport report;
  int collisions = 0;
};

TableRow eval_run(const fs::path& dir) {
  const auto cfg = load_config(dir / "config.json");
  const auto worlds = read_maps(dir / "maps");
  const auto optimal = optimal_lengths(worlds, cfg.astar_resolution, cfg.r0);

  std::ifstream in(dir / "results.csv");
  if (!in) throw Error(ErrorCode::kMissingFile, "no results.csv in " + dir.string());
  std::string line;
  std::getline(in, line);
  std::vector<MetricsRow> rows;
  int collisions = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() < 6) throw Error(ErrorCode::kBadConfig, "malformed results row: " + line);
    const auto k = std::stoul(f[0]);
    const auto id = std::stoul(f[2]);
    if (k >= optimal.size() || id >= optimal[k].size())
      throw Error(ErrorCode::kLengthMismatch, "results row refers to a missing map or robot: " + line);
    collisions += f[4] == "1" ? 1 : 0;
    rows.push_back({f[3] == "1", std::stod(f[5]), optimal[k][id]});
  }
  return {std::string(to_string(cfg.env)), std::string(to_string(cfg.planner)), compute_metrics(rows), collisions};
}

int cmd_eval(const std::vector<std::string>& runs, std::string out_prefix) {
  std::vector<TableRow> table;
  for (const auto& r : runs) table.push_back(eval_run(r));
  const fs::path prefix = out_prefix.empty() ? output_dir("out") / "table" : fs::path(out_prefix);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());

  auto csv = open_out(prefix.string() + ".csv");
  csv << "environment,method,AR,APL,SPL\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : table) {
    char line[160];
    std::snprintf(line, sizeof line, "%s,%s,%.1f,%.2f,%.1f\n", t.env.c_str(), t.method.c_str(), t.report.ar,
                  t.report.apl, t.report.spl);
    csv << line;
    std::cout << line;
    rows.push_back({{"environment", t.env},
                    {"method", t.method},
                    {"AR", t.report.ar},
                    {"APL", t.report.apl},
                    {"SPL", t.report.spl},
                    {"robots", t.report.rows.size()},
                    {"collisions", t.collisions}});
  }
  open_out(prefix.string() + ".json") << rows.dump(2) << "\n";
  return 0;
}

int cmd_bench(int m, int iterations, std::uint64_t seed, bool json) {
  if (m < 2) throw Error(ErrorCode::kBadConfig, "--m must be >= 2");
  if (iterations < 0) throw Error(ErrorCode::kBadConfig, "--iterations must be >= 0");
  const auto s = bench_filtering(m, iterations, seed);
  if (json) {
    nlohmann::json j{{"samples", m},       {"count", s.count},     {"median_us", s.median_us},
                     {"mean_us", s.mean_us}, {"p99_us", s.p99_us}, {"min_us", s.min_us},
                     {"max_us", s.max_us}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("M=%d iterations=%d\nmedian %.2f us\nmean   %.2f us\np99    %.2f us\nmin    %.2f us\nmax    %.2f us\n", m,
                s.count, s.median_us, s.mean_us, s.p99_us, s.min_us, s.max_us);
  }
  return 0;
}

// Long trace -> one row per tick with x/y/mode columns per robot.
int cmd_export(const std::string& trace, std::string out) {
  std::ifstream in(trace);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open trace " + trace);
  std::string line;
  std::map<std::uint32_t, std::map<int, std::array<std::string, 3>>> ticks;
  int max_id = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("tick,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() < 6) throw Error(ErrorCode::kBadConfig, "malformed trace row: " + line);
    const int id = std::stoi(f[1]);
    max_id = std::max(max_id, id);
    ticks[static_cast<std::uint32_t>(std::stoul(f[0]))][id] = {f[2], f[3], f[5]};
  }
  if (out.empty()) out = fs::path(trace).replace_extension(".wide.csv").string();
  auto os = open_out(out);
  os << "tick";
  for (int i = 0; i <= max_id; ++i) os << ",x_" << i << ",y_" << i << ",mode_" << i;
  os << "\n";
  for (const auto& [tick, robots] : ticks) {
    os << tick;
    for (int i = 0; i <= max_id; ++i) {
      const auto it = robots.find(i);
      if (it == robots.end()) {
        os << ",,,";
      } else {
        os << "," << it->second[0] << "," << it->second[1] << "," << it->second[2];
      }
    }
    os << "\n";
  }
  std::cout << "wrote " << ticks.size() << " ticks to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fftnav: FFT scan filtering and swarm navigation experiments"};
  app.require_subcommand(1);

  Overrides gen_o;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-maps", "generate world files");
  add_common(gen, gen_o, false);
  gen->add_option("--out", gen_out, "output directory");

  Overrides run_o;
  std::string run_out;
  bool no_trace = false;
  auto* run = app.add_subcommand("run", "run episodes and write traces, results and summary");
  add_common(run, run_o, true);
  run->add_option("--out", run_out, "output directory");
  run->add_flag("--no-trace", no_trace, "skip per-tick traces");

  std::vector<std::string> eval_runs;
  std::string eval_out;
  auto* ev = app.add_subcommand("eval", "A* reference and AR/APL/SPL table over run directories");
  ev->add_option("runs", eval_runs, "run directories")->required();
  ev->add_option("--out", eval_out, "output path prefix for .csv and .json");

  int bench_m = 360;
  int bench_iter = 10000;
  std::uint64_t bench_seed = 1;
  bool bench_json = false;
  auto* bench = app.add_subcommand("bench", "latency of safe-direction extraction + compression");
  bench->add_option("--m", bench_m, "samples per scan");
  bench->add_option("--iterations", bench_iter, "timed runs");
  bench->add_option("--seed", bench_seed, "scan generator seed");
  bench->add_flag("--json", bench_json, "print JSON");

  std::string exp_trace;
  std::string exp_out;
  auto* exp = app.add_subcommand("export", "convert a trace to a wide plot-ready CSV");
  exp->add_option("trace", exp_trace, "trace CSV")->required();
  exp->add_option("--out", exp_out, "output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_maps(gen_o, gen_out);
    if (run->parsed()) return cmd_run(run_o, run_out, no_trace);
    if (ev->parsed()) return cmd_eval(eval_runs, eval_out);
    if (bench->parsed()) return cmd_bench(bench_m, bench_iter, bench_seed, bench_json);
    if (exp->parsed()) return cmd_export(exp_trace, exp_out);
  } catch (const Error& e) {
    std::cerr << "fftnav: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fftnav: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
