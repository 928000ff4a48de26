#include "fftnav/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "fftnav/error.hpp"

namespace fftnav {

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) throw Error(ErrorCode::kBadSize, "FFT size must be a power of two");
  // Stage with half-length h keeps its h twiddles at offset h - 1.
  twiddle_.resize(n > 1 ? n - 1 : 0);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t k = 0; k < h; ++k) {
      const double a = -std::numbers::pi * static_cast<double>(k) / static_cast<double>(h);
      twiddle_[h - 1 + k] = {std::cos(a), std::sin(a)};
    }
  }
  bitrev_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev_[i] = r;
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }

void FftPlan::inverse(std::span<Complex> data) const {
  transform(data, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) throw Error(ErrorCode::kBadSize, "buffer length differs from plan size");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const Complex* tw = twiddle_.data() + (half - 1);
    for (std::size_t start = 0; start < n_; start += len) {
      Complex* a = data.data() + start;
      Complex* b = a + half;
      for (std::size_t k = 0; k < half; ++k) {
        const Complex w = inverse ? std::conj(tw[k]) : tw[k];
        const Complex v = cmul(b[k], w);
        b[k] = a[k] - v;
        a[k] += v;
      }
    }
  }
}

std::vector<Complex> fft_forward(std::span<const double> x, std::size_t n0) {
  if (x.size() > n0) throw Error(ErrorCode::kBadSize, "input longer than FFT size");
  FftPlan plan(n0);
  std::vector<Complex> buf(n0);
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  plan.forward(buf);
  return buf;
}

std::vector<Complex> fft_forward(std::span<const Complex> x, std::size_t n0) {
  if (x.size() > n0) throw Error(ErrorCode::kBadSize, "input longer than FFT size");
  FftPlan plan(n0);
  std::vector<Complex> buf(n0);
  std::copy(x.begin(), x.end(), buf.begin());
  plan.forward(buf);
  return buf;
}

std::vector<Complex> fft_inverse(std::span<const Complex> spectrum) {
  FftPlan plan(spectrum.size());
  std::vector<Complex> buf(spectrum.begin(), spectrum.end());
  plan.inverse(buf);
  return buf;
}

}  // namespace fftnav
