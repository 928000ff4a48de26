#include "fftnav/perception.hpp"

#include <algorithm>
#include <cmath>

#include "fftnav/error.hpp"

namespace fftnav {

namespace {

constexpr double kPlateauTol = 1e-12;

void check_scan(const Scan& scan, const FilterBank& bank) {
  if (static_cast<int>(scan.samples.size()) != scan.config.samples || scan.config.samples != bank.samples) {
    throw Error(ErrorCode::kBankMismatch, "scan length differs from the filter bank");
  }
}

std::vector<AngularInterval> merge_runs(const std::vector<std::uint8_t>& mask, const SensorConfig& cfg) {
  const int m = static_cast<int>(mask.size());
  std::vector<AngularInterval> out;
  auto emit = [&](int first, int count) {
    AngularInterval iv;
    iv.first_index = first;
    iv.count = count;
    iv.start = index_to_angle(first, cfg);
    iv.end = iv.start + (count - 1) * cfg.resolution();
    out.push_back(iv);
  };

  const int safe_count = static_cast<int>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
  if (safe_count == 0) return out;
  if (safe_count == m) {
    emit(0, m);
    return out;
  }
  // For full circles start at a run boundary so a run wrapping through the
  // last sample stays in one piece.
  int origin = 0;
  if (cfg.full_circle()) {
    while (!(mask[static_cast<std::size_t>(origin)] && !mask[static_cast<std::size_t>((origin + m - 1) % m)])) ++origin;
  }
  int k = 0;
  while (k < m) {
    const int i = (origin + k) % m;
    if (!mask[static_cast<std::size_t>(i)]) {
      ++k;
      continue;
    }
    int len = 0;
    while (k + len < m && mask[static_cast<std::size_t>((origin + k + len) % m)]) ++len;
    emit(i, len);
    k += len;
  }
  return out;
}

// Centre of the run of values equal to y[idx] (within tolerance).
int plateau_center(std::span<const double> y, int idx, bool circular) {
  const int m = static_cast<int>(y.size());
  const double v = y[static_cast<std::size_t>(idx)];
  int back = 0;
  int fwd = 0;
  auto at = [&](int i) { return y[static_cast<std::size_t>(((i % m) + m) % m)]; };
  if (circular) {
    while (back + fwd < m - 1 && std::abs(at(idx - back - 1) - v) <= kPlateauTol) ++back;
    while (back + fwd < m - 1 && std::abs(at(idx + fwd + 1) - v) <= kPlateauTol) ++fwd;
  } else {
    while (idx - back - 1 >= 0 && std::abs(at(idx - back - 1) - v) <= kPlateauTol) ++back;
    while (idx + fwd + 1 < m && std::abs(at(idx + fwd + 1) - v) <= kPlateauTol) ++fwd;
  }
  const int len = back + fwd + 1;
  const int center = idx - back + (len - 1) / 2;
  return ((center % m) + m) % m;
}

struct RawExtremum {
  int index;
  ExtremumKind kind;
};

std::vector<RawExtremum> circular_peaks(std::span<const double> y, double delta) {
  const int m = static_cast<int>(y.size());
  const int g = static_cast<int>(std::max_element(y.begin(), y.end()) - y.begin());
  std::vector<RawExtremum> out{{g, ExtremumKind::kMax}};
  bool want_min = true;
  double best = y[static_cast<std::size_t>(g)];
  int best_idx = g;
  for (int step = 1; step <= m; ++step) {
    const int i = (g + step) % m;
    const double v = y[static_cast<std::size_t>(i)];
    if (step == m) {
      if (want_min) out.push_back({best_idx, ExtremumKind::kMin});
      break;
    }
    if (want_min) {
      if (v < best) {
        best = v;
        best_idx = i;
      } else if (v > best + delta) {
        out.push_back({best_idx, ExtremumKind::kMin});
        want_min = false;
        best = v;
        best_idx = i;
      }
    } else {
      if (v > best) {
        best = v;
        best_idx = i;
      } else if (v < best - delta) {
        out.push_back({best_idx, ExtremumKind::kMax});
        want_min = true;
        best = v;
        best_idx = i;
      }
    }
  }
  return out;
}

std::vector<RawExtremum> linear_peaks(std::span<const double> y, double delta) {
  const int m = static_cast<int>(y.size());
  enum class State { kUnknown, kWantMax, kWantMin } state = State::kUnknown;
  double hi = y[0];
  double lo = y[0];
  int hi_idx = 0;
  int lo_idx = 0;
  std::vector<RawExtremum> out;
  for (int i = 1; i < m; ++i) {
    const double v = y[static_cast<std::size_t>(i)];
    switch (state) {
      case State::kUnknown:
        if (v > hi) hi = v, hi_idx = i;
        if (v < lo) lo = v, lo_idx = i;
        if (v > lo + delta) {
          out.push_back({lo_idx, ExtremumKind::kMin});
          state = State::kWantMax;
          hi = v, hi_idx = i;
        } else if (v < hi - delta) {
          out.push_back({hi_idx, ExtremumKind::kMax});
          state = State::kWantMin;
          lo = v, lo_idx = i;
        }
        break;
      case State::kWantMax:
        if (v > hi) {
          hi = v, hi_idx = i;
        } else if (v < hi - delta) {
          out.push_back({hi_idx, ExtremumKind::kMax});
          state = State::kWantMin;
          lo = v, lo_idx = i;
        }
        break;
      case State::kWantMin:
        if (v < lo) {
          lo = v, lo_idx = i;
        } else if (v > lo + delta) {
          out.push_back({lo_idx, ExtremumKind::kMin});
          state = State::kWantMax;
          hi = v, hi_idx = i;
        }
        break;
    }
  }
  if (state == State::kWantMax) out.push_back({hi_idx, ExtremumKind::kMax});
  if (state == State::kWantMin) out.push_back({lo_idx, ExtremumKind::kMin});
  return out;
}

}  // namespace

double bearing_of_index(int index, const SensorConfig& cfg) { return wrap_two_pi(index_to_angle(index, cfg)); }

std::vector<double> truncate_scan(std::span<const double> samples, double threshold) {
  std::vector<double> t(samples.begin(), samples.end());
  for (double& v : t) v = std::min(v, threshold);
  return t;
}

SafeDirections safe_from_response(std::span<const double> response, const SensorConfig& cfg,
                                  const ProtectiveModel& model, int window) {
  const int m = static_cast<int>(response.size());
  const double threshold = model.plan_dist / cfg.max_range;
  SafeDirections out;
  out.scale = model.plan_dist;
  out.mask.assign(static_cast<std::size_t>(m), 0);
  int lo = 0;
  int hi = m - 1;
  if (!cfg.full_circle()) {
    lo = window / 2;
    hi = m - 1 - window / 2;
  }
  for (int i = lo; i <= hi; ++i) {
    out.mask[static_cast<std::size_t>(i)] = response[static_cast<std::size_t>(i)] >= threshold - kSafeThresholdEps;
  }
  out.intervals = merge_runs(out.mask, cfg);
  return out;
}

SafeDirections extract_safe_directions(const Scan& scan, const ProtectiveModel& model, const FilterBank& bank) {
  check_scan(scan, bank);
  const auto t = truncate_scan(scan.samples, model.plan_dist / scan.config.max_range);
  const auto y = scan.config.full_circle() ? filter_1d_circular(t, bank.safe, bank) : filter_1d(t, bank.safe, bank);
  return safe_from_response(y, scan.config, model, bank.safe.window);
}

std::vector<Extremum> find_extrema(std::span<const double> filtered, const SensorConfig& cfg) {
  const auto [lo_it, hi_it] = std::minmax_element(filtered.begin(), filtered.end());
  std::vector<Extremum> out;
  if (*hi_it - *lo_it < kExtremumProminence) {
    const double v = std::clamp(filtered[0], 0.0, 1.0);
    out.push_back({0.0, v, ExtremumKind::kMax});
    out.push_back({kPi, v, ExtremumKind::kMin});
    return out;
  }
  const bool circular = cfg.full_circle();
  const auto raw = circular ? circular_peaks(filtered, kExtremumProminence) : linear_peaks(filtered, kExtremumProminence);
  out.reserve(raw.size());
  for (const auto& e : raw) {
    const int idx = plateau_center(filtered, e.index, circular);
    out.push_back({bearing_of_index(idx, cfg), std::clamp(filtered[static_cast<std::size_t>(idx)], 0.0, 1.0), e.kind});
  }
  std::sort(out.begin(), out.end(), [](const Extremum& a, const Extremum& b) { return a.phi < b.phi; });
  return out;
}

CompressedObservation compress(const Scan& scan, const FilterBank& bank, std::uint16_t sender_id) {
  check_scan(scan, bank);
  const auto y = scan.config.full_circle() ? filter_1d_circular(scan.samples, bank.lowpass, bank)
                                           : filter_1d(scan.samples, bank.lowpass, bank);
  CompressedObservation obs;
  obs.sender_id = sender_id;
  obs.sender_heading = wrap_two_pi(scan.heading);
  obs.extrema = find_extrema(y, scan.config);
  return obs;
}

Perception perceive(const Scan& scan, const ProtectiveModel& model, const FilterBank& bank, std::uint16_t sender_id) {
  check_scan(scan, bank);
  const auto t = truncate_scan(scan.samples, model.plan_dist / scan.config.max_range);
  const auto [y1, y2] = filter_pair(t, scan.samples, bank, scan.config.full_circle());
  Perception p;
  p.safe = safe_from_response(y1, scan.config, model, bank.safe.window);
  p.observation.sender_id = sender_id;
  p.observation.sender_heading = wrap_two_pi(scan.heading);
  p.observation.extrema = find_extrema(y2, scan.config);
  return p;
}

double interpolate_profile(std::span<const Extremum> extrema, double bearing) {
  if (extrema.empty()) throw Error(ErrorCode::kEmptyObservation, "no extrema to interpolate");
  if (extrema.size() == 1) return extrema[0].d;
  const double theta = wrap_two_pi(bearing);
  // First extremum with phi > theta.
  const auto it = std::upper_bound(extrema.begin(), extrema.end(), theta,
                                   [](double t, const Extremum& e) { return t < e.phi; });
  const Extremum* a;
  const Extremum* b;
  double a_phi;
  double b_phi;
  double t = theta;
  if (it == extrema.begin() || it == extrema.end()) {
    a = &extrema.back();
    b = &extrema.front();
    a_phi = a->phi;
    b_phi = b->phi + kTwoPi;
    if (t < a_phi) t += kTwoPi;
  } else {
    a = &*(it - 1);
    b = &*it;
    a_phi = a->phi;
    b_phi = b->phi;
  }
  const double span = b_phi - a_phi;
  if (!(span > 0.0)) return a->d;
  const double frac = (t - a_phi) / span;
  return a->d + frac * (b->d - a->d);
}

CompressedObservation rotate_to_frame(const CompressedObservation& obs, double receiver_heading) {
  CompressedObservation out = obs;
  const double shift = obs.sender_heading - receiver_heading;
  for (auto& e : out.extrema) e.phi = wrap_two_pi(e.phi + shift);
  std::sort(out.extrema.begin(), out.extrema.end(), [](const Extremum& a, const Extremum& b) { return a.phi < b.phi; });
  out.sender_heading = wrap_two_pi(receiver_heading);
  return out;
}

ReconstructedScan reconstruct(const CompressedObservation& obs, const SensorConfig& cfg, double receiver_heading) {
  if (obs.extrema.empty()) throw Error(ErrorCode::kEmptyObservation, "observation carries no extrema");
  const auto local = rotate_to_frame(obs, receiver_heading);
  ReconstructedScan out;
  out.samples.resize(static_cast<std::size_t>(cfg.samples));
  for (int n = 0; n < cfg.samples; ++n) {
    out.samples[static_cast<std::size_t>(n)] = interpolate_profile(local.extrema, bearing_of_index(n, cfg));
  }
  return out;
}

BoolGrid extract_safe_mask_3d(const Grid& depth, const DepthCameraConfig& cam, const ProtectiveModel& model) {
  if (depth.rows != cam.rows || depth.cols != cam.cols) {
    throw Error(ErrorCode::kShapeMismatch, "depth image shape differs from camera config");
  }
  const SensorConfig horiz{cam.h_fov, cam.cols, cam.max_range, std::nullopt};
  const SensorConfig vert{cam.v_fov, cam.rows, cam.max_range, std::nullopt};
  const FilterSpec row_filter = build_h1(cam.cols, cutoff_frequency(horiz, model).window);
  const FilterSpec col_filter = build_h1(cam.rows, cutoff_frequency(vert, model).window);

  const double threshold = model.plan_dist / cam.max_range;
  Grid truncated = depth;
  for (double& v : truncated.values) v = std::min(v, threshold);
  const Grid y = filter_2d(truncated, row_filter, col_filter);

  BoolGrid mask{depth.rows, depth.cols, std::vector<std::uint8_t>(depth.values.size(), 0)};
  const int hr = col_filter.window / 2;
  const int hc = row_filter.window / 2;
  for (int r = hr; r < depth.rows - hr; ++r) {
    for (int c = hc; c < depth.cols - hc; ++c) {
      mask.values[static_cast<std::size_t>(r) * depth.cols + c] = y.at(r, c) >= threshold - kSafeThresholdEps;
    }
  }
  return mask;
}

}  // namespace fftnav
