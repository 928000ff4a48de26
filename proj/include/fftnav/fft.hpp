#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fftnav {

using Complex = std::complex<double>;

/// Plain complex product; std::complex operator* goes through the slow
/// Annex G path (__muldc3) unless -ffast-math is on.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 transform with precomputed twiddles and bit-reversal
// table. Forward uses exp(-2*pi*i*k*n/N); inverse includes the 1/N factor.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

 private:
  void transform(std::span<Complex> data, bool inverse) const;

  std::size_t n_;
  std::vector<Complex> twiddle_;  // per stage, exp(-i*pi*k/h) for k < h
  std::vector<std::size_t> bitrev_;
};

/// Zero-pads x to n0 and returns its DFT.
std::vector<Complex> fft_forward(std::span<const double> x, std::size_t n0);
std::vector<Complex> fft_forward(std::span<const Complex> x, std::size_t n0);
/// Inverse DFT of a length-n0 spectrum.
std::vector<Complex> fft_inverse(std::span<const Complex> spectrum);

}  // namespace fftnav
