#include "sicfiber/fiber.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sicfiber/fft.hpp"
#include "sicfiber/rng.hpp"

namespace sicfiber {

namespace {
constexpr double kPlanck = 6.62607015e-34;  // J*s

// Signed FFT frequency index for bin j of an N-point transform.
inline long signed_bin(std::size_t j, std::size_t n) {
  return j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}
}  // namespace

double FiberParams::n_ase() const {
  const double alpha_per_m = alpha_db_per_km * 1e-3 / (10.0 * std::log10(M_E));
  return alpha_per_m * length_m * kPlanck * center_freq_hz * eta;
}

Waveform modulate_wdm(const std::vector<std::complex<double>>& coi,
                      const std::vector<std::vector<std::complex<double>>>& interferers,
                      const FiberParams& p, int osf) {
  const std::size_t n = coi.size();
  if (n == 0 || osf < 1) throw std::invalid_argument("modulate_wdm: empty input or bad osf");
  if (interferers.size() != static_cast<std::size_t>(p.n_wdm - 1)) {
    throw std::invalid_argument("modulate_wdm: interferer count must be n_wdm - 1");
  }
  for (const auto& ch : interferers) {
    if (ch.size() != n) throw std::invalid_argument("modulate_wdm: length mismatch");
  }
  const double fs = static_cast<double>(osf) * p.baud_hz;
  const int c = p.interferer_pairs();
  if (c * p.spacing_hz + 0.5 * p.baud_hz > 0.5 * fs) {
    throw std::invalid_argument("modulate_wdm: WDM band exceeds simulation bandwidth");
  }
  const double bins_per_channel = p.spacing_hz * n / p.baud_hz;
  if (std::abs(bins_per_channel - std::round(bins_per_channel)) > 1e-9) {
    throw std::invalid_argument("modulate_wdm: channel spacing is not an integer bin count");
  }
  const long shift_unit = std::lround(bins_per_channel);

  const std::size_t nn = n * static_cast<std::size_t>(osf);
  std::vector<std::complex<double>> spectrum(nn, 0.0);
  Fft fft_sym(n);
  std::vector<std::complex<double>> x(n);

  // Channel order: k = -C..-1, then 1..C; index 0 is the channel of interest.
  auto add_channel = [&](const std::vector<std::complex<double>>& sym, int k) {
    x = sym;
    fft_sym.forward(x.data());
    const long shift = k * shift_unit;
    for (std::size_t m = 0; m < n; ++m) {
      long pos = (signed_bin(m, n) + shift) % static_cast<long>(nn);
      if (pos < 0) pos += static_cast<long>(nn);
      spectrum[static_cast<std::size_t>(pos)] += static_cast<double>(osf) * x[m];
    }
  };
  add_channel(coi, 0);
  std::size_t idx = 0;
  for (int k = -c; k <= c; ++k) {
    if (k == 0) continue;
    add_channel(interferers[idx++], k);
  }

  Waveform out;
  out.sample_rate_hz = fs;
  out.samples = std::move(spectrum);
  fft_inverse(out.samples);
  return out;
}

Waveform ssfm_propagate(const Waveform& w, const FiberParams& p, int n_steps,
                        std::uint64_t noise_seed, bool noise_on) {
  if (n_steps < 1) throw std::invalid_argument("ssfm_propagate: n_steps must be >= 1");
  const std::size_t nn = w.samples.size();
  const double fs = w.sample_rate_hz;
  const double dz = p.length_m / n_steps;

  // Half-step dispersion factor exp(j*beta2/2*omega^2*dz/2) per bin.
  std::vector<std::complex<double>> half_disp(nn);
  for (std::size_t j = 0; j < nn; ++j) {
    const double omega = 2.0 * M_PI * fs * signed_bin(j, nn) / static_cast<double>(nn);
    half_disp[j] = std::polar(1.0, 0.5 * p.beta2 * omega * omega * 0.5 * dz);
  }
  // Per-bin noise variance per step: white density n_ase*dz/L over the
  // simulation band, unnormalized-FFT convention.
  const double bin_noise_var =
      noise_on ? static_cast<double>(nn) * p.n_ase() * fs * dz / p.length_m : 0.0;

  std::vector<std::complex<double>> u = w.samples;
  Fft fft(nn);
  fft.forward(u.data());

  for (int step = 0; step < n_steps; ++step) {
    for (std::size_t j = 0; j < nn; ++j) u[j] *= half_disp[j];
    fft.inverse(u.data());
    for (auto& ut : u) ut *= std::polar(1.0, p.gamma_nl * std::norm(ut) * dz);
    fft.forward(u.data());
    double energy = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
      u[j] *= half_disp[j];
      energy += std::norm(u[j]);
    }
    if (noise_on) {
      Rng rng(mix_keys(noise_seed, static_cast<std::uint64_t>(step)));
      for (auto& uj : u) uj += rng.cscg(bin_noise_var);
    }
    if (!std::isfinite(energy)) {
      throw std::runtime_error("ssfm_propagate: non-finite field at step " +
                               std::to_string(step));
    }
  }

  Waveform out;
  out.sample_rate_hz = fs;
  out.center_freq_offset_hz = w.center_freq_offset_hz;
  out.samples = std::move(u);
  fft.inverse(out.samples.data());
  return out;
}

Waveform dbp_single_channel(const Waveform& w, const FiberParams& p, int n_steps) {
  FiberParams back = p;
  back.beta2 = -p.beta2;
  back.gamma_nl = -p.gamma_nl;
  return ssfm_propagate(w, back, n_steps, 0, false);
}

Waveform bandlimit_resample(const Waveform& w, double band_hz, std::size_t out_samples) {
  const std::size_t nn = w.samples.size();
  const std::size_t m = out_samples;
  if (m == 0 || nn == 0) throw std::invalid_argument("bandlimit_resample: empty waveform");

  std::vector<std::complex<double>> spec = w.samples;
  fft_forward(spec);

  // Keep signed bins in [-thr, thr-1]: the half-open band [-B/2, B/2).
  const long thr = std::lround(band_hz * static_cast<double>(nn) / (2.0 * w.sample_rate_hz));
  std::vector<std::complex<double>> out_spec(m, 0.0);
  const double scale = static_cast<double>(m) / static_cast<double>(nn);
  for (std::size_t j = 0; j < m; ++j) {
    const long fm = signed_bin(j, m);
    if (fm < -thr || fm >= thr) continue;
    if (fm < -static_cast<long>(nn / 2) || fm >= static_cast<long>(nn - nn / 2)) continue;
    const std::size_t src = static_cast<std::size_t>(fm < 0 ? fm + static_cast<long>(nn) : fm);
    out_spec[j] = scale * spec[src];
  }
  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz * scale;
  out.center_freq_offset_hz = w.center_freq_offset_hz;
  out.samples = std::move(out_spec);
  fft_inverse(out.samples);
  return out;
}

std::vector<std::complex<double>> receiver_frontend(const Waveform& w, const FiberParams& p,
                                                    double theta_hat, int n_steps, int dbp_osf) {
  const double osf_d = w.sample_rate_hz / p.baud_hz;
  const std::size_t n = static_cast<std::size_t>(
      std::llround(static_cast<double>(w.samples.size()) / osf_d));
  if (n == 0 || n * static_cast<std::size_t>(std::llround(osf_d)) != w.samples.size()) {
    throw std::runtime_error("receiver_frontend: sample count is not a symbol multiple");
  }
  Waveform narrow = bandlimit_resample(w, p.baud_hz, n * static_cast<std::size_t>(dbp_osf));
  Waveform undone = dbp_single_channel(narrow, p, n_steps);
  Waveform symbols = bandlimit_resample(undone, p.baud_hz, n);

  const std::complex<double> rot = std::polar(1.0, -theta_hat);
  std::vector<std::complex<double>> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = symbols.samples[i] * rot;
  return y;
}

void write_waveform(std::ostream& os, const Waveform& w) {
  const std::uint64_t n = w.samples.size();
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  os.write(reinterpret_cast<const char*>(&w.sample_rate_hz), sizeof(double));
  os.write(reinterpret_cast<const char*>(&w.center_freq_offset_hz), sizeof(double));
  os.write(reinterpret_cast<const char*>(w.samples.data()),
           static_cast<std::streamsize>(n * sizeof(std::complex<double>)));
}

Waveform read_waveform(std::istream& is) {
  Waveform w;
  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  is.read(reinterpret_cast<char*>(&w.sample_rate_hz), sizeof(double));
  is.read(reinterpret_cast<char*>(&w.center_freq_offset_hz), sizeof(double));
  w.samples.resize(n);
  is.read(reinterpret_cast<char*>(w.samples.data()),
          static_cast<std::streamsize>(n * sizeof(std::complex<double>)));
  if (!is) throw std::runtime_error("read_waveform: truncated stream");
  return w;
}

}  // namespace sicfiber
