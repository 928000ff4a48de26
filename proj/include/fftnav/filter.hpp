#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fftnav/fft.hpp"
#include "fftnav/geometry.hpp"

namespace fftnav {

enum class FilterKind : std::uint8_t { kSafeWindow = 1, kLowpass = 2 };

/// Linear-phase FIR filter. Tap count is always odd so the group delay is a
/// whole number of samples.
struct FilterSpec {
  FilterKind kind = FilterKind::kSafeWindow;
  int taps = 0;
  int window = 0;       // effective (odd) rectangular width, safe window only
  double cutoff = 0.0;  // cycles/sample, lowpass only
  int delay = 0;        // (taps - 1) / 2
  std::vector<double> h;
};

/// Smallest power of two N0 with N0 > 2*max(m, n1, n2) and
/// N0 > max(m + n1 - 1, m + n2 - 1).
int choose_fft_size(int m, int n1, int n2);

/// Odd tap count used for a length-m signal: m itself or m + 1.
constexpr int odd_taps_for(int m) { return (m % 2 == 1) ? m : m + 1; }

/// Rectangular window of width Tc (rounded up to odd) centred on the group
/// delay of an odd_taps_for(samples)-tap filter. Taps are 1/width.
FilterSpec build_h1(int samples, int window);

/// Blackman-windowed sinc lowpass, renormalised to unit DC gain.
FilterSpec build_h2(int taps, double cutoff);

/// Pre-computed filter pair and spectra for one sensor/robot combination.
/// Immutable after construction; safe to share across threads.
struct FilterBank {
  int samples = 0;
  int fft_size = 0;
  FilterSpec safe;
  FilterSpec lowpass;
  std::vector<Complex> safe_spectrum;
  std::vector<Complex> lowpass_spectrum;
  std::shared_ptr<const FftPlan> plan;

  static FilterBank build(const SensorConfig& cfg, const ProtectiveModel& model);
  static FilterBank from_filters(int samples, FilterSpec safe, FilterSpec lowpass);

  const FilterSpec& spec(FilterKind kind) const;
  const std::vector<Complex>& spectrum(FilterKind kind) const;
};

/// Zero-padded linear convolution via the bank's FFT, shifted left by the
/// group delay and truncated to the input length (principal value sequence).
std::vector<double> filter_1d(std::span<const double> s, const FilterSpec& filter,
                              const FilterBank& bank);

/// Same FFT product, with the linear output folded modulo the signal length.
/// Equals circular convolution; used for full-circle scans.
std::vector<double> filter_1d_circular(std::span<const double> s, const FilterSpec& filter,
                                       const FilterBank& bank);

/// Filters `a` with the safe window and `b` with the lowpass using a single
/// complex FFT pair (two real signals packed as real/imaginary parts).
std::pair<std::vector<double>, std::vector<double>> filter_pair(std::span<const double> a,
                                                                std::span<const double> b,
                                                                const FilterBank& bank,
                                                                bool circular);

/// Row-major dense matrix used for 2D signals and depth images.
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  Grid() = default;
  Grid(int r, int c, double fill = 0.0) : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, fill) {}

  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

/// Separable 2D filtering: the 1D principal-value pipeline along every row,
/// then along every column. Rows and columns are processed in parallel.
Grid filter_2d(const Grid& s, const FilterSpec& row_filter, const FilterSpec& col_filter);
/// Single-threaded reference of filter_2d.
Grid filter_2d_serial(const Grid& s, const FilterSpec& row_filter, const FilterSpec& col_filter);

/// Binary bank blob: "FNFB", u8 version, u32 samples, u32 fft size,
/// u32 window, f64 cutoff, u32 N1, f64[N1], u32 N2, f64[N2]; little-endian.
std::vector<std::uint8_t> export_bank(const FilterBank& bank);
FilterBank import_bank(std::span<const std::uint8_t> blob);

}  // namespace fftnav
