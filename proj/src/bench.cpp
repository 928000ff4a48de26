#include "fftnav/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "fftnav/perception.hpp"
#include "fftnav/world.hpp"

namespace fftnav {

LatencyStats bench_filtering(int samples, int iterations, std::uint64_t seed) {
  LatencyStats st;
  if (iterations <= 0) return st;
  SensorConfig cfg{kTwoPi, samples, 3.0, BlindArc{kPi, deg_to_rad(15.0)}};
  const auto model = derive_protective_model(0.15, 0.3);
  const auto bank = FilterBank::build(cfg, model);

  // A pool of cluttered scans: a few random circles around the sensor.
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Scan> pool(16);
  for (auto& scan : pool) {
    World w;
    for (int k = 0; k < 12; ++k) {
      const double a = kTwoPi * unit();
      const double d = 0.5 + 3.0 * unit();
      w.obstacles.push_back({{10.0 + d * std::cos(a), 10.0 + d * std::sin(a)}, 0.1 + 0.4 * unit()});
    }
    scan = raycast_scan(w, {{10.0, 10.0}, 0.0}, cfg);
  }

  for (int i = 0; i < 50; ++i) {
    const auto& s = pool[static_cast<std::size_t>(i) % pool.size()];
    (void)extract_safe_directions(s, model, bank);
    (void)compress(s, bank);
  }

  std::vector<double> us;
  us.reserve(static_cast<std::size_t>(iterations));
  std::size_t sink = 0;
  for (int i = 0; i < iterations; ++i) {
    const auto& s = pool[static_cast<std::size_t>(i) % pool.size()];
    const auto t0 = std::chrono::steady_clock::now();
    const auto safe = extract_safe_directions(s, model, bank);
    const auto obs = compress(s, bank);
    const auto t1 = std::chrono::steady_clock::now();
    sink += safe.intervals.size() + obs.extrema.size();
    us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  if (sink == static_cast<std::size_t>(-1)) us.push_back(0.0);

  st.count = iterations;
  double total = 0.0;
  for (double v : us) total += v;
  st.mean_us = total / static_cast<double>(us.size());
  std::sort(us.begin(), us.end());
  const auto n = us.size();
  st.median_us = n % 2 ? us[n / 2] : 0.5 * (us[n / 2 - 1] + us[n / 2]);
  st.p99_us = us[std::min(n - 1, static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(n))) - 1)];
  st.min_us = us.front();
  st.max_us = us.back();
  return st;
}

}  // namespace fftnav
