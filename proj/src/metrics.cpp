#include "fftnav/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fftnav/error.hpp"

namespace fftnav {

MetricsReport compute_metrics(std::span<const MetricsRow> rows) {
  MetricsReport m;
  m.rows.assign(rows.begin(), rows.end());
  if (rows.empty()) return m;
  // Summation order must not depend on row order.
  std::vector<double> spl;
  std::vector<double> lengths;
  for (const auto& r : rows) {
    if (!r.success) continue;
    lengths.push_back(r.path_length);
    spl.push_back(r.optimal_length / std::max(r.path_length, r.optimal_length));
  }
  std::sort(spl.begin(), spl.end());
  std::sort(lengths.begin(), lengths.end());
  double s = 0.0;
  for (double v : spl) s += v;
  double l = 0.0;
  for (double v : lengths) l += v;
  const auto n = static_cast<double>(rows.size());
  m.ar = 100.0 * static_cast<double>(lengths.size()) / n;
  m.spl = 100.0 * s / n;
  m.apl = lengths.empty() ? 0.0 : l / static_cast<double>(lengths.size());
  return m;
}

MetricsReport compute_metrics(std::span<const bool> success, std::span<const double> path_length,
                              std::span<const double> optimal_length) {
  if (success.size() != path_length.size() || success.size() != optimal_length.size()) {
    throw Error(ErrorCode::kLengthMismatch, "need one optimal length and one path length per robot");
  }
  std::vector<MetricsRow> rows;
  for (std::size_t i = 0; i < success.size(); ++i) rows.push_back({success[i], path_length[i], optimal_length[i]});
  return compute_metrics(rows);
}

}  // namespace fftnav
