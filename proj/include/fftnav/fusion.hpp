#pragma once

#include <array>
#include <span>
#include <vector>

#include "fftnav/geometry.hpp"
#include "fftnav/perception.hpp"

namespace fftnav {

/// Open-space polygon area in quadrants I..IV (normalised units).
using QuadrantAreas = std::array<double, 4>;

/// Area of the extremum polygon inside each quadrant. `reference` is the
/// bearing (same frame as the extrema) the quadrants are laid around; each
/// quadrant polygon is closed by the interpolated profile at its bounds.
QuadrantAreas quadrant_areas(std::span<const Extremum> extrema, const ProtectiveModel& model, double reference = 0.0);

/// Logistic function, overflow-safe for large |z|.
double sigmoid(double z);

/// Turn-left probability from own quadrant areas. Weights are
/// [w_s, 1, -1, -w_s] / (1 + w_s).
double p_self(const QuadrantAreas& x0, double w_s = 1.0, double b0 = 0.0);

/// w_n = -(2 (l_th + r) + r0) / R.
double neighbor_threshold(const ProtectiveModel& model, const SensorConfig& cfg);

/// Value fed to the neighbour sigmoid: extremum statistics inside the
/// alpha-wide sector around target_direction (same frame as obs).
double neighbor_passability(const CompressedObservation& obs, const ProtectiveModel& model, double target_direction);

/// Passable probability toward target_direction at a neighbour, from its
/// observation already rotated into the receiver frame.
double p_neighbor(const CompressedObservation& obs, const ProtectiveModel& model, const SensorConfig& cfg,
                  double target_direction);

enum class Side { kLeft, kRight };

constexpr Side opposite(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }

struct NeighborReport {
  int id = 0;
  Side side = Side::kLeft;
  double p = 0.5;
  double distance = 0.0;  // centre-to-centre, m
};

struct FusionParams {
  double self_factor = 3.0;   // w0 = self_factor * w_i
  bool use_neighbors = true;  // false forces every neighbour weight to zero
};

struct FusionEntry {
  NeighborReport report;
  double weight = 0.0;
  bool excluded = false;
};

struct FusionState {
  double p_self = 0.5;
  double self_weight = 1.0;
  std::vector<FusionEntry> neighbors;
  double p = 0.5;
};

/// Weighted fusion of own and neighbour probabilities into the turn-left
/// probability. Neighbours closer than 2r or farther than R get zero weight;
/// right-side neighbours contribute 1 - P_i.
FusionState fuse(double p_s, std::span<const NeighborReport> neighbors, const ProtectiveModel& model,
                 const SensorConfig& cfg, const FusionParams& params = {});

/// Left iff p >= 0.5.
Side decide_side(double p);

}  // namespace fftnav
