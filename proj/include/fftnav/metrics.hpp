#pragma once

#include <span>
#include <vector>

namespace fftnav {

struct MetricsRow {
  bool success = false;
  double path_length = 0.0;     // p_i, m
  double optimal_length = 0.0;  // l_i, m
};

struct MetricsReport {
  double ar = 0.0;   // %
  double apl = 0.0;  // m, mean over successes; 0 when nothing succeeded
  double spl = 0.0;  // %
  std::vector<MetricsRow> rows;
};

MetricsReport compute_metrics(std::span<const MetricsRow> rows);

/// Pairs outcomes with optimal lengths; throws length-mismatch when the
/// counts differ.
MetricsReport compute_metrics(std::span<const bool> success, std::span<const double> path_length,
                              std::span<const double> optimal_length);

}  // namespace fftnav
