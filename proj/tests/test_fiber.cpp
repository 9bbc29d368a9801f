#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "sicfiber/constellation.hpp"
#include "sicfiber/fiber.hpp"
#include "sicfiber/math.hpp"
#include "sicfiber/rng.hpp"

using namespace sicfiber;

namespace {

FiberParams single_channel_link() {
  FiberParams p;
  p.n_wdm = 1;
  return p;
}

std::vector<std::complex<double>> random_symbols(std::size_t n, double power, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::complex<double>> x(n);
  for (auto& xi : x) xi = rng.cscg(power);
  return x;
}

double mean_power(const std::vector<std::complex<double>>& v) {
  double p = 0.0;
  for (const auto& s : v) p += std::norm(s);
  return p / v.size();
}

double rel_rms_error(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("amplification noise density of the reference link") {
  FiberParams p;  // 0.2 dB/km over 1000 km at 193.414 THz, eta = 1
  CHECK(p.n_ase() == doctest::Approx(5.902e-18).epsilon(2e-3));
  CHECK(p.n_ase() * p.baud_hz == doctest::Approx(2.951e-7).epsilon(2e-3));
}

TEST_CASE("modulation reproduces the symbols at the symbol instants") {
  const auto p = single_channel_link();
  const int osf = 8;
  const auto x = random_symbols(64, 1e-3, 11);
  const auto w = modulate_wdm(x, {}, p, osf);
  REQUIRE(w.samples.size() == x.size() * osf);
  CHECK(w.sample_rate_hz == doctest::Approx(osf * p.baud_hz));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(w.samples[i * osf] - x[i]) < 1e-12 * std::sqrt(1e-3));
  }
  // bandlimited interpolation preserves average power (Parseval)
  CHECK(mean_power(w.samples) == doctest::Approx(mean_power(x)).epsilon(1e-12));
}

TEST_CASE("WDM multiplex is power-additive across channels") {
  FiberParams p;
  p.n_wdm = 3;
  const std::size_t n = 64;
  const double power = 2e-3;
  const auto coi = random_symbols(n, power, 21);
  const std::vector<std::vector<std::complex<double>>> intf{random_symbols(n, power, 22),
                                                            random_symbols(n, power, 23)};
  const auto w = modulate_wdm(coi, intf, p, 8);
  const double want = mean_power(coi) + mean_power(intf[0]) + mean_power(intf[1]);
  CHECK(mean_power(w.samples) == doctest::Approx(want).epsilon(1e-12));

  // stripping back down to the center channel recovers its symbols exactly
  // (disjoint brick-wall bands)
  const auto back = bandlimit_resample(w, p.baud_hz, n);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(back.samples[i] - coi[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("modulation input validation") {
  FiberParams p;
  p.n_wdm = 3;
  const auto x = random_symbols(64, 1e-3, 31);
  CHECK_THROWS_AS(modulate_wdm(x, {}, p, 8), std::invalid_argument);  // missing interferers
  // band does not fit at osf 2 with two side channels
  CHECK_THROWS_AS(modulate_wdm(x, {x, x}, p, 2), std::invalid_argument);
  // fractional bin shift
  FiberParams frac = p;
  frac.spacing_hz = 50.3e9;
  CHECK_THROWS_AS(modulate_wdm(x, {x, x}, frac, 8), std::invalid_argument);
}

TEST_CASE("linear propagation is an exact all-pass") {
  auto p = single_channel_link();
  p.gamma_nl = 0.0;
  const std::size_t nn = 256;
  const double fs = 8 * p.baud_hz;

  // complex exponential at one bin picks up the quadratic phase exactly
  const long k = 37;
  Waveform tone;
  tone.sample_rate_hz = fs;
  tone.samples.resize(nn);
  for (std::size_t m = 0; m < nn; ++m) {
    tone.samples[m] = std::polar(1.0, 2.0 * M_PI * k * static_cast<double>(m) / nn);
  }
  const auto out = ssfm_propagate(tone, p, 17, 0, false);
  const double omega = 2.0 * M_PI * fs * k / static_cast<double>(nn);
  const double want = 0.5 * p.beta2 * omega * omega * p.length_m;
  for (std::size_t m = 0; m < nn; ++m) {
    CHECK(std::abs(out.samples[m]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wrap_phase(std::arg(out.samples[m] / tone.samples[m]) - wrap_phase(want)) ==
          doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("zero-dispersion propagation preserves the modulus") {
  auto p = single_channel_link();
  p.beta2 = 0.0;
  const std::size_t nn = 512;
  const double amp = std::sqrt(1e-3);
  Rng rng(41);
  Waveform w;
  w.sample_rate_hz = p.baud_hz;
  w.samples.resize(nn);
  for (auto& s : w.samples) s = std::polar(amp, 2.0 * M_PI * rng.uniform() - M_PI);
  const auto out = ssfm_propagate(w, p, 20, 0, false);
  const double want_phase = p.gamma_nl * amp * amp * p.length_m;
  for (std::size_t m = 0; m < nn; ++m) {
    CHECK(std::abs(out.samples[m]) == doctest::Approx(amp).epsilon(1e-12));
    CHECK(wrap_phase(std::arg(out.samples[m] / w.samples[m]) - want_phase) ==
          doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("noiseless propagation conserves energy") {
  const auto p = single_channel_link();
  const auto x = random_symbols(128, 1e-3, 51);
  const auto w = modulate_wdm(x, {}, p, 8);
  const auto out = ssfm_propagate(w, p, 40, 0, false);
  CHECK(mean_power(out.samples) == doctest::Approx(mean_power(w.samples)).epsilon(1e-12));
}

TEST_CASE("backward propagation inverts the forward pass exactly") {
  const auto p = single_channel_link();
  const auto x = random_symbols(128, 1e-3, 61);
  const auto w = modulate_wdm(x, {}, p, 8);
  const auto fwd = ssfm_propagate(w, p, 50, 0, false);
  const auto back = dbp_single_channel(fwd, p, 50);
  CHECK(rel_rms_error(back.samples, w.samples) < 1e-9);
}

TEST_CASE("split-step error decays at second order") {
  // narrowband configuration so the step sizes sit in the asymptotic regime
  // (band-edge dispersion phase per step well below a radian)
  auto p = single_channel_link();
  p.baud_hz = 10e9;
  p.spacing_hz = 10e9;
  const auto x = random_symbols(64, 2e-3, 71);
  const auto w = modulate_wdm(x, {}, p, 2);
  const auto ref = ssfm_propagate(w, p, 3200, 0, false);
  const auto coarse = ssfm_propagate(w, p, 100, 0, false);
  const auto fine = ssfm_propagate(w, p, 200, 0, false);
  const double e_coarse = rel_rms_error(coarse.samples, ref.samples);
  const double e_fine = rel_rms_error(fine.samples, ref.samples);
  CHECK(e_coarse > e_fine);
  const double order = std::log2(e_coarse / e_fine);
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("receiver chain undoes a noiseless single-channel link") {
  const auto p = single_channel_link();
  const auto x = random_symbols(128, 2e-4, 81);
  const auto w = modulate_wdm(x, {}, p, 8);
  const auto rx = ssfm_propagate(w, p, 200, 0, false);
  const auto y = receiver_frontend(rx, p, 0.0, 200, 2);
  REQUIRE(y.size() == x.size());
  // the bandpass before back-propagation clips out-of-band nonlinear
  // products, so the inversion is accurate but not exact
  CHECK(rel_rms_error(y, x) < 0.02);
}

TEST_CASE("matched-filtered amplification noise has the expected variance") {
  const auto p = single_channel_link();
  const std::size_t n = 16384;
  const std::vector<std::complex<double>> zeros(n, 0.0);
  double var = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed : {1001, 1002, 1003, 1004}) {
    const auto w = modulate_wdm(zeros, {}, p, 4);
    const auto rx = ssfm_propagate(w, p, 40, seed, true);
    const auto filtered = bandlimit_resample(rx, p.baud_hz, n);
    for (const auto& s : filtered.samples) var += std::norm(s);
    count += n;
  }
  var /= count;
  CHECK(var == doctest::Approx(p.n_ase() * p.baud_hz).epsilon(0.02));
}

TEST_CASE("noise stream is reproducible and seed-separated") {
  const auto p = single_channel_link();
  const auto x = random_symbols(64, 1e-3, 91);
  const auto w = modulate_wdm(x, {}, p, 4);
  const auto a = ssfm_propagate(w, p, 10, 5, true);
  const auto b = ssfm_propagate(w, p, 10, 5, true);
  const auto c = ssfm_propagate(w, p, 10, 6, true);
  CHECK(rel_rms_error(a.samples, b.samples) == doctest::Approx(0.0));
  CHECK(rel_rms_error(a.samples, c.samples) > 0.0);
}

TEST_CASE("waveform binary round trip") {
  Waveform w;
  w.sample_rate_hz = 4e11;
  w.center_freq_offset_hz = -5e10;
  w.samples = random_symbols(33, 1.0, 99);
  std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
  write_waveform(ss, w);
  const auto back = read_waveform(ss);
  CHECK(back.sample_rate_hz == w.sample_rate_hz);
  CHECK(back.center_freq_offset_hz == w.center_freq_offset_hz);
  REQUIRE(back.samples.size() == w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) CHECK(back.samples[i] == w.samples[i]);

  std::stringstream truncated(std::ios::in | std::ios::out | std::ios::binary);
  write_waveform(truncated, w);
  std::string body = truncated.str();
  body.resize(body.size() - 8);
  std::istringstream bad(body, std::ios::binary);
  CHECK_THROWS_AS(read_waveform(bad), std::runtime_error);
}
