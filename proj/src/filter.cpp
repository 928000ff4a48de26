#include "fftnav/filter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "fftnav/error.hpp"

namespace fftnav {

int choose_fft_size(int m, int n1, int n2) {
  const int nyquist = 2 * std::max({m, n1, n2});
  const int alias = std::max(m + n1 - 1, m + n2 - 1);
  int n0 = 1;
  while (!(n0 > nyquist && n0 > alias)) n0 <<= 1;
  return n0;
}

FilterSpec build_h1(int samples, int window) {
  if (samples < 1 || window < 1) throw Error(ErrorCode::kInvalidArgument, "samples and window must be >= 1");
  FilterSpec f;
  f.kind = FilterKind::kSafeWindow;
  f.taps = odd_taps_for(samples);
  if (window > f.taps) throw Error(ErrorCode::kTcExceedsLength, "window wider than filter");
  f.window = (window % 2 == 1) ? window : window + 1;
  f.delay = (f.taps - 1) / 2;
  f.h.assign(static_cast<std::size_t>(f.taps), 0.0);
  const int half = f.window / 2;
  const double tap = 1.0 / f.window;
  for (int n = f.delay - half; n <= f.delay + half; ++n) f.h[static_cast<std::size_t>(n)] = tap;
  return f;
}

FilterSpec build_h2(int taps, double cutoff) {
  if (taps < 1 || taps % 2 == 0) throw Error(ErrorCode::kInvalidArgument, "lowpass tap count must be odd");
  if (!(cutoff > 0.0 && cutoff < 0.5)) throw Error(ErrorCode::kInvalidCutoff, "cutoff must lie in (0, 0.5)");
  FilterSpec f;
  f.kind = FilterKind::kLowpass;
  f.taps = taps;
  f.cutoff = cutoff;
  f.delay = (taps - 1) / 2;
  f.h.assign(static_cast<std::size_t>(taps), 0.0);
  const double span = taps > 1 ? static_cast<double>(taps - 1) : 1.0;
  // Compute one half and mirror so the symmetry is bit-exact.
  for (int n = 0; n <= f.delay; ++n) {
    const double x = 2.0 * cutoff * (n - f.delay);
    const double sinc = (x == 0.0) ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double w = taps > 1 ? 0.42 - 0.5 * std::cos(2.0 * kPi * n / span) + 0.08 * std::cos(4.0 * kPi * n / span)
                              : 1.0;
    const double v = 2.0 * cutoff * sinc * w;
    f.h[static_cast<std::size_t>(n)] = v;
    f.h[static_cast<std::size_t>(taps - 1 - n)] = v;
  }
  double sum = 0.0;
  for (double v : f.h) sum += v;
  for (double& v : f.h) v /= sum;
  return f;
}

namespace {

std::vector<Complex> spectrum_of(const FilterSpec& f, const FftPlan& plan) {
  std::vector<Complex> buf(plan.size());
  for (std::size_t i = 0; i < f.h.size(); ++i) buf[i] = f.h[i];
  plan.forward(buf);
  return buf;
}

void check_against_bank(std::span<const double> s, const FilterSpec& filter, const FilterBank& bank) {
  if (static_cast<int>(s.size()) != bank.samples) {
    throw Error(ErrorCode::kBankMismatch, "signal length differs from bank sample count");
  }
  const FilterSpec& own = bank.spec(filter.kind);
  if (own.taps != filter.taps || own.h != filter.h) {
    throw Error(ErrorCode::kBankMismatch, "filter taps are not the ones stored in the bank");
  }
}

// Reads the principal value sequence out of the full linear convolution held
// in buf[0 .. m + taps - 2].
template <typename Get>
std::vector<double> principal(int m, int taps, int delay, bool circular, Get get) {
  std::vector<double> out(static_cast<std::size_t>(m));
  if (!circular) {
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = get(i + delay);
    return out;
  }
  std::vector<double> fold(static_cast<std::size_t>(m), 0.0);
  for (int q = 0; q < m + taps - 1; ++q) fold[static_cast<std::size_t>(q % m)] += get(q);
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = fold[static_cast<std::size_t>((i + delay) % m)];
  return out;
}

std::vector<double> run_1d(std::span<const double> s, const FilterSpec& filter, const FilterBank& bank,
                           bool circular) {
  check_against_bank(s, filter, bank);
  const auto& spec = bank.spectrum(filter.kind);
  std::vector<Complex> buf(static_cast<std::size_t>(bank.fft_size));
  for (std::size_t i = 0; i < s.size(); ++i) buf[i] = s[i];
  bank.plan->forward(buf);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = cmul(buf[k], spec[k]);
  bank.plan->inverse(buf);
  return principal(bank.samples, filter.taps, filter.delay, circular,
                   [&](int q) { return buf[static_cast<std::size_t>(q)].real(); });
}

}  // namespace

FilterBank FilterBank::build(const SensorConfig& cfg, const ProtectiveModel& model) {
  cfg.validate();
  const Cutoff c = cutoff_frequency(cfg, model);
  const int taps = odd_taps_for(cfg.samples);
  return from_filters(cfg.samples, build_h1(cfg.samples, c.window), build_h2(taps, c.digital));
}

FilterBank FilterBank::from_filters(int samples, FilterSpec safe, FilterSpec lowpass) {
  if (safe.kind != FilterKind::kSafeWindow || lowpass.kind != FilterKind::kLowpass) {
    throw Error(ErrorCode::kInvalidArgument, "filter kinds do not match their bank slots");
  }
  FilterBank b;
  b.samples = samples;
  b.fft_size = choose_fft_size(samples, safe.taps, lowpass.taps);
  b.plan = std::make_shared<const FftPlan>(static_cast<std::size_t>(b.fft_size));
  b.safe = std::move(safe);
  b.lowpass = std::move(lowpass);
  b.safe_spectrum = spectrum_of(b.safe, *b.plan);
  b.lowpass_spectrum = spectrum_of(b.lowpass, *b.plan);
  return b;
}

const FilterSpec& FilterBank::spec(FilterKind kind) const {
  return kind == FilterKind::kSafeWindow ? safe : lowpass;
}

const std::vector<Complex>& FilterBank::spectrum(FilterKind kind) const {
  return kind == FilterKind::kSafeWindow ? safe_spectrum : lowpass_spectrum;
}

std::vector<double> filter_1d(std::span<const double> s, const FilterSpec& filter, const FilterBank& bank) {
  return run_1d(s, filter, bank, false);
}

std::vector<double> filter_1d_circular(std::span<const double> s, const FilterSpec& filter,
                                       const FilterBank& bank) {
  return run_1d(s, filter, bank, true);
}

std::pair<std::vector<double>, std::vector<double>> filter_pair(std::span<const double> a,
                                                                std::span<const double> b,
                                                                const FilterBank& bank, bool circular) {
  check_against_bank(a, bank.safe, bank);
  check_against_bank(b, bank.lowpass, bank);
  const std::size_t n = static_cast<std::size_t>(bank.fft_size);
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = {a[i], b[i]};
  bank.plan->forward(z);
  // Unpack the two real spectra, apply each filter, repack.
  std::vector<Complex> y(n);
  const Complex half_i{0.0, 0.5};
  for (std::size_t k = 0; k < n; ++k) {
    const Complex zk = z[k];
    const Complex zc = std::conj(z[(n - k) % n]);
    const Complex ak = 0.5 * (zk + zc);
    const Complex bk = cmul(-half_i, zk - zc);
    const Complex lb = cmul(bk, bank.lowpass_spectrum[k]);
    y[k] = cmul(ak, bank.safe_spectrum[k]) + Complex{-lb.imag(), lb.real()};
  }
  bank.plan->inverse(y);
  auto first = principal(bank.samples, bank.safe.taps, bank.safe.delay, circular,
                         [&](int q) { return y[static_cast<std::size_t>(q)].real(); });
  auto second = principal(bank.samples, bank.lowpass.taps, bank.lowpass.delay, circular,
                          [&](int q) { return y[static_cast<std::size_t>(q)].imag(); });
  return {std::move(first), std::move(second)};
}

namespace {

struct AxisFilter {
  const FilterSpec* spec;
  FftPlan plan;
  std::vector<Complex> spectrum;
};

AxisFilter make_axis(const FilterSpec& f, int length) {
  const int n0 = choose_fft_size(length, f.taps, f.taps);
  AxisFilter a{&f, FftPlan(static_cast<std::size_t>(n0)), {}};
  a.spectrum = spectrum_of(f, a.plan);
  return a;
}

void filter_line(const AxisFilter& ax, std::vector<Complex>& buf, std::span<double> line) {
  std::fill(buf.begin(), buf.end(), Complex{});
  for (std::size_t i = 0; i < line.size(); ++i) buf[i] = line[i];
  ax.plan.forward(buf);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = cmul(buf[k], ax.spectrum[k]);
  ax.plan.inverse(buf);
  for (std::size_t i = 0; i < line.size(); ++i) line[i] = buf[i + static_cast<std::size_t>(ax.spec->delay)].real();
}

Grid filter_2d_impl(const Grid& s, const FilterSpec& row_filter, const FilterSpec& col_filter, bool parallel) {
  if (s.rows < 1 || s.cols < 1 || static_cast<int>(s.values.size()) != s.rows * s.cols) {
    throw Error(ErrorCode::kShapeMismatch, "grid storage does not match its shape");
  }
  if (row_filter.window > s.cols || col_filter.window > s.rows) {
    throw Error(ErrorCode::kShapeMismatch, "grid smaller than the filter footprint");
  }
  const AxisFilter rows = make_axis(row_filter, s.cols);
  const AxisFilter cols = make_axis(col_filter, s.rows);
  Grid out = s;

#pragma omp parallel if (parallel)
  {
    std::vector<Complex> buf(rows.plan.size());
#pragma omp for schedule(static)
    for (int r = 0; r < s.rows; ++r) {
      filter_line(rows, buf, std::span<double>(out.values.data() + static_cast<std::size_t>(r) * s.cols,
                                               static_cast<std::size_t>(s.cols)));
    }
  }

#pragma omp parallel if (parallel)
  {
    std::vector<Complex> buf(cols.plan.size());
    std::vector<double> line(static_cast<std::size_t>(s.rows));
#pragma omp for schedule(static)
    for (int c = 0; c < s.cols; ++c) {
      for (int r = 0; r < s.rows; ++r) line[static_cast<std::size_t>(r)] = out.at(r, c);
      filter_line(cols, buf, line);
      for (int r = 0; r < s.rows; ++r) out.at(r, c) = line[static_cast<std::size_t>(r)];
    }
  }
  return out;
}

// Little-endian byte helpers for the bank blob.
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    return v;
  }

  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return std::bit_cast<double>(v);
  }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw Error(ErrorCode::kTruncatedPayload, "filter bank blob is truncated");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

constexpr std::uint8_t kBankMagic[4] = {'F', 'N', 'F', 'B'};
constexpr std::uint8_t kBankVersion = 1;

}  // namespace

Grid filter_2d(const Grid& s, const FilterSpec& row_filter, const FilterSpec& col_filter) {
  return filter_2d_impl(s, row_filter, col_filter, true);
}

Grid filter_2d_serial(const Grid& s, const FilterSpec& row_filter, const FilterSpec& col_filter) {
  return filter_2d_impl(s, row_filter, col_filter, false);
}

std::vector<std::uint8_t> export_bank(const FilterBank& bank) {
  std::vector<std::uint8_t> out(std::begin(kBankMagic), std::end(kBankMagic));
  out.push_back(kBankVersion);
  put_u32(out, static_cast<std::uint32_t>(bank.samples));
  put_u32(out, static_cast<std::uint32_t>(bank.fft_size));
  put_u32(out, static_cast<std::uint32_t>(bank.safe.window));
  put_f64(out, bank.lowpass.cutoff);
  put_u32(out, static_cast<std::uint32_t>(bank.safe.h.size()));
  for (double v : bank.safe.h) put_f64(out, v);
  put_u32(out, static_cast<std::uint32_t>(bank.lowpass.h.size()));
  for (double v : bank.lowpass.h) put_f64(out, v);
  return out;
}

FilterBank import_bank(std::span<const std::uint8_t> blob) {
  if (blob.size() < 5 || !std::equal(std::begin(kBankMagic), std::end(kBankMagic), blob.begin())) {
    throw Error(ErrorCode::kMalformedHeader, "not a filter bank blob");
  }
  Reader rd(blob.subspan(4));
  if (rd.u8() != kBankVersion) throw Error(ErrorCode::kBadVersion, "unsupported filter bank version");
  const auto samples = static_cast<int>(rd.u32());
  const auto fft_size = static_cast<int>(rd.u32());
  const auto window = static_cast<int>(rd.u32());
  const double cutoff = rd.f64();

  auto read_taps = [&rd] {
    const std::uint32_t n = rd.u32();
    if (n == 0 || n > (1u << 24)) throw Error(ErrorCode::kMalformedHeader, "implausible tap count");
    std::vector<double> h(n);
    for (auto& v : h) v = rd.f64();
    return h;
  };

  FilterSpec safe;
  safe.kind = FilterKind::kSafeWindow;
  safe.h = read_taps();
  safe.taps = static_cast<int>(safe.h.size());
  safe.window = window;
  safe.delay = (safe.taps - 1) / 2;

  FilterSpec low;
  low.kind = FilterKind::kLowpass;
  low.h = read_taps();
  low.taps = static_cast<int>(low.h.size());
  low.cutoff = cutoff;
  low.delay = (low.taps - 1) / 2;

  if (!rd.done()) throw Error(ErrorCode::kMalformedHeader, "trailing bytes after filter bank");
  if (safe.taps % 2 == 0 || low.taps % 2 == 0) throw Error(ErrorCode::kMalformedHeader, "even tap count");

  FilterBank bank = FilterBank::from_filters(samples, std::move(safe), std::move(low));
  if (bank.fft_size != fft_size) throw Error(ErrorCode::kMalformedHeader, "FFT size disagrees with tap counts");
  return bank;
}

}  // namespace fftnav
