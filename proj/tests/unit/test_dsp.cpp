#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fftnav/error.hpp"
#include "fftnav/fft.hpp"
#include "fftnav/filter.hpp"
#include "oracles.hpp"

using namespace fftnav;

namespace {

FilterBank sim_bank() {
  const SensorConfig cfg{kTwoPi, 360, 3.0, std::nullopt};
  return FilterBank::build(cfg, derive_protective_model(0.15, 0.3));
}

std::vector<double> random_signal(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(static_cast<std::size_t>(n));
  for (auto& v : s) v = u(rng);
  return s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(FftSize, Examples) {
  EXPECT_EQ(choose_fft_size(360, 361, 361), 1024);
  EXPECT_EQ(choose_fft_size(4, 3, 5), 16);
  EXPECT_EQ(choose_fft_size(1, 1, 1), 4);
}

TEST(FftSize, Minimal) {
  for (int m = 1; m < 200; m += 7) {
    for (int n1 = 1; n1 < 200; n1 += 13) {
      const int n2 = odd_taps_for(m);
      const int n0 = choose_fft_size(m, n1, n2);
      EXPECT_TRUE(is_power_of_two(static_cast<std::size_t>(n0)));
      EXPECT_GT(n0, 2 * std::max({m, n1, n2}));
      EXPECT_GT(n0, std::max(m + n1 - 1, m + n2 - 1));
      const int half = n0 / 2;
      EXPECT_FALSE(half > 2 * std::max({m, n1, n2}) && half > std::max(m + n1 - 1, m + n2 - 1));
    }
  }
}

TEST(Fft, ZerosAndImpulse) {
  const std::vector<double> zeros(16, 0.0);
  for (const auto& v : fft_forward(zeros, 16)) EXPECT_EQ(v, Complex{});
  std::vector<double> impulse(16, 0.0);
  impulse[0] = 1.0;
  for (const auto& v : fft_forward(impulse, 16)) {
    EXPECT_NEAR(v.real(), 1.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  }
}

TEST(Fft, MatchesNaiveDft) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
    std::vector<Complex> x(n);
    for (auto& v : x) v = {u(rng), u(rng)};
    const auto fast = fft_forward(std::span<const Complex>(x), n);
    const auto slow = oracle::naive_dft(x);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-12) << n << " " << k;
  }
}

TEST(Fft, ZeroPaddedMatchesNaiveDft) {
  std::mt19937_64 rng(22);
  const auto s = random_signal(rng, 40);
  const auto fast = fft_forward(s, 64);
  std::vector<Complex> padded(64);
  for (std::size_t i = 0; i < s.size(); ++i) padded[i] = s[i];
  const auto slow = oracle::naive_dft(padded);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-12);
}

TEST(Fft, RoundTrip) {
  std::mt19937_64 rng(23);
  const auto s = random_signal(rng, 720);
  const auto back = fft_inverse(fft_forward(s, 1024));
  for (std::size_t i = 0; i < 1024; ++i) {
    const double expect = i < s.size() ? s[i] : 0.0;
    EXPECT_LT(std::abs(back[i].real() - expect), 1e-12);
    EXPECT_LT(std::abs(back[i].imag()), 1e-12);
  }
}

TEST(Fft, RejectsBadSizes) {
  EXPECT_THROW(FftPlan(12), Error);
  const std::vector<double> s(20, 1.0);
  EXPECT_THROW(fft_forward(s, 16), Error);
  FftPlan plan(8);
  std::vector<Complex> buf(4);
  EXPECT_THROW(plan.forward(buf), Error);
}

TEST(H1, Examples) {
  const auto id = build_h1(5, 1);
  EXPECT_EQ(id.taps, 5);
  EXPECT_EQ(id.delay, 2);
  EXPECT_EQ(id.h, (std::vector<double>{0, 0, 1, 0, 0}));

  const auto w3 = build_h1(5, 3);
  EXPECT_EQ(w3.h, (std::vector<double>{0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0}));

  const auto even = build_h1(360, 60);
  EXPECT_EQ(even.taps, 361);
  EXPECT_EQ(even.window, 61);
  double sum = 0.0;
  for (double v : even.h) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-15 * 61);
}

TEST(H1, WindowTooWide) {
  try {
    build_h1(5, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTcExceedsLength);
  }
}

TEST(H2, SymmetricAndUnitDc) {
  const auto h = build_h2(361, 1.0 / 60.0);
  EXPECT_EQ(h.delay, 180);
  for (int n = 0; n < h.taps; ++n) EXPECT_EQ(h.h[static_cast<std::size_t>(n)], h.h[static_cast<std::size_t>(h.taps - 1 - n)]);
  double sum = 0.0;
  for (double v : h.h) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_NEAR(oracle::dtft_gain(h.h, 0.0), 1.0, 1e-14);
}

TEST(H2, ResponseAtCutoff) {
  // A window-method lowpass crosses half amplitude (-6 dB) at fc; the -3 dB
  // point sits a little below fc.
  const auto h = build_h2(361, 1.0 / 60.0);
  const double fc = h.cutoff;
  const double gain_db = 20.0 * std::log10(oracle::dtft_gain(h.h, fc));
  EXPECT_NEAR(gain_db, -6.02, 0.1);
  const double at_08 = 20.0 * std::log10(oracle::dtft_gain(h.h, 0.8 * fc));
  EXPECT_GE(at_08, -3.5);
  EXPECT_GT(at_08, -3.0);  // the -3 dB crossing lies in (0.8 fc, fc)
}

TEST(H2, Stopband) {
  const auto h = build_h2(361, 1.0 / 60.0);
  // Blackman transition width ~ 5.5 / N.
  const double edge = h.cutoff + 5.5 / 361.0;
  for (double f = edge; f < 0.5; f += 0.0005) {
    EXPECT_LE(20.0 * std::log10(oracle::dtft_gain(h.h, f) + 1e-300), -58.0) << f;
  }
}

TEST(H2, RejectsBadCutoff) {
  EXPECT_THROW(build_h2(11, 0.0), Error);
  EXPECT_THROW(build_h2(11, 0.5), Error);
  EXPECT_THROW(build_h2(10, 0.1), Error);
}

TEST(Filter1D, IdentityFilter) {
  std::mt19937_64 rng(31);
  const auto s = random_signal(rng, 360);
  const auto bank = FilterBank::from_filters(360, build_h1(360, 1), build_h2(361, 1.0 / 60.0));
  EXPECT_LT(max_abs_diff(filter_1d(s, bank.safe, bank), s), 1e-10);
}

TEST(Filter1D, ConstantInteriorPreserved) {
  const auto bank = sim_bank();
  const std::vector<double> s(360, 0.37);
  for (const auto* f : {&bank.safe, &bank.lowpass}) {
    const auto y = filter_1d(s, *f, bank);
    const int half = f->kind == FilterKind::kSafeWindow ? f->window / 2 : f->delay;
    for (int i = half; i < 360 - half; ++i) EXPECT_NEAR(y[static_cast<std::size_t>(i)], 0.37, 1e-10);
    const auto yc = filter_1d_circular(s, *f, bank);
    for (double v : yc) EXPECT_NEAR(v, 0.37, 1e-10);
  }
}

TEST(Filter1D, MatchesDirectConvolution) {
  const auto bank = sim_bank();
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_signal(rng, 360);
    EXPECT_LT(max_abs_diff(filter_1d(s, bank.safe, bank), oracle::principal(s, bank.safe.h)), 1e-9);
    EXPECT_LT(max_abs_diff(filter_1d(s, bank.lowpass, bank), oracle::principal(s, bank.lowpass.h)), 1e-9);
    EXPECT_LT(max_abs_diff(filter_1d_circular(s, bank.safe, bank), oracle::circular(s, bank.safe.h)), 1e-9);
    EXPECT_LT(max_abs_diff(filter_1d_circular(s, bank.lowpass, bank), oracle::circular(s, bank.lowpass.h)), 1e-9);
  }
}

TEST(Filter1D, PackedPairMatchesSeparateRuns) {
  const auto bank = sim_bank();
  std::mt19937_64 rng(33);
  const auto a = random_signal(rng, 360);
  const auto b = random_signal(rng, 360);
  for (bool circular : {false, true}) {
    const auto [ya, yb] = filter_pair(a, b, bank, circular);
    const auto ra = circular ? filter_1d_circular(a, bank.safe, bank) : filter_1d(a, bank.safe, bank);
    const auto rb = circular ? filter_1d_circular(b, bank.lowpass, bank) : filter_1d(b, bank.lowpass, bank);
    EXPECT_LT(max_abs_diff(ya, ra), 1e-12);
    EXPECT_LT(max_abs_diff(yb, rb), 1e-12);
  }
}

TEST(Filter1D, LinearPhase) {
  // A sinusoid well inside the passband comes back in phase after
  // group-delay compensation.
  const auto bank = sim_bank();
  std::vector<double> s(360);
  for (int n = 0; n < 360; ++n) s[static_cast<std::size_t>(n)] = 0.5 + 0.4 * std::sin(kTwoPi * 2.0 * n / 360.0);
  const auto y = filter_1d_circular(s, bank.lowpass, bank);
  int best_lag = 0;
  double best = -1e300;
  for (int lag = -20; lag <= 20; ++lag) {
    double c = 0.0;
    for (int n = 0; n < 360; ++n) c += (s[static_cast<std::size_t>(n)] - 0.5) * (y[static_cast<std::size_t>((n + lag + 360) % 360)] - 0.5);
    if (c > best) best = c, best_lag = lag;
  }
  EXPECT_EQ(best_lag, 0);
}

TEST(Filter1D, BankMismatch) {
  const auto bank = sim_bank();
  const std::vector<double> s(100, 0.5);
  EXPECT_THROW(filter_1d(s, bank.safe, bank), Error);
  const auto other = build_h1(360, 31);
  const std::vector<double> ok(360, 0.5);
  EXPECT_THROW(filter_1d(ok, other, bank), Error);
}

TEST(Filter2D, ConstantAndImpulse) {
  const auto rf = build_h1(16, 5);
  const auto cf = build_h1(16, 3);
  Grid c(16, 16, 0.8);
  const auto yc = filter_2d(c, rf, cf);
  for (int r = 1; r < 15; ++r)
    for (int k = 2; k < 14; ++k) EXPECT_NEAR(yc.at(r, k), 0.8, 1e-10);

  const auto id = build_h1(16, 1);
  Grid imp(16, 16, 0.0);
  imp.at(7, 9) = 1.0;
  const auto yi = filter_2d(imp, id, id);
  for (int r = 0; r < 16; ++r)
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(yi.at(r, k), (r == 7 && k == 9) ? 1.0 : 0.0, 1e-12);
}

TEST(Filter2D, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid g(16, 20);
  for (auto& v : g.values) v = u(rng);
  const auto rf = build_h1(20, 7);
  const auto cf = build_h2(17, 0.1);
  const auto y = filter_2d(g, rf, cf);

  // Rows with the row filter, then columns with the column filter.
  Grid mid(16, 20);
  for (int r = 0; r < 16; ++r) {
    std::vector<double> row(g.values.begin() + r * 20, g.values.begin() + (r + 1) * 20);
    const auto out = oracle::principal(row, rf.h);
    for (int k = 0; k < 20; ++k) mid.at(r, k) = out[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < 20; ++k) {
    std::vector<double> col(16);
    for (int r = 0; r < 16; ++r) col[static_cast<std::size_t>(r)] = mid.at(r, k);
    const auto out = oracle::principal(col, cf.h);
    for (int r = 0; r < 16; ++r) EXPECT_NEAR(y.at(r, k), out[static_cast<std::size_t>(r)], 1e-9);
  }
}

TEST(Filter2D, ParallelEqualsSerial) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid g(64, 48);
  for (auto& v : g.values) v = u(rng);
  const auto rf = build_h1(48, 9);
  const auto cf = build_h1(64, 11);
  EXPECT_EQ(filter_2d(g, rf, cf).values, filter_2d_serial(g, rf, cf).values);
}

TEST(Filter2D, ShapeMismatch) {
  Grid bad;
  bad.rows = 4;
  bad.cols = 4;
  bad.values.assign(3, 0.0);
  const auto f = build_h1(4, 1);
  EXPECT_THROW(filter_2d(bad, f, f), Error);
}

TEST(BankBlob, RoundTrip) {
  const auto bank = sim_bank();
  const auto blob = export_bank(bank);
  EXPECT_EQ(blob[0], 'F');
  const auto back = import_bank(blob);
  EXPECT_EQ(back.samples, bank.samples);
  EXPECT_EQ(back.fft_size, 1024);
  EXPECT_EQ(back.safe.h, bank.safe.h);
  EXPECT_EQ(back.lowpass.h, bank.lowpass.h);
  EXPECT_EQ(back.safe.window, bank.safe.window);
  EXPECT_EQ(back.lowpass.cutoff, bank.lowpass.cutoff);

  auto bad = blob;
  bad[0] = 'X';
  EXPECT_THROW(import_bank(bad), Error);
  bad = blob;
  bad.resize(bad.size() / 2);
  EXPECT_THROW(import_bank(bad), Error);
}
