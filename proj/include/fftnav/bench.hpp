#pragma once

#include <cstdint>

namespace fftnav {

struct LatencyStats {
  int count = 0;
  double median_us = 0.0;
  double mean_us = 0.0;
  double p99_us = 0.0;
  double min_us = 0.0;
  double max_us = 0.0;
};

/// Wall time of extract_safe_directions + compress per synthetic scan of
/// `samples` beams (full circle). Zero iterations yields empty stats.
LatencyStats bench_filtering(int samples, int iterations, std::uint64_t seed = 1);

}  // namespace fftnav
