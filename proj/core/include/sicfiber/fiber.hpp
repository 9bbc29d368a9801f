#ifndef SICFIBER_FIBER_HPP
#define SICFIBER_FIBER_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace sicfiber {

/// Physical link parameters plus the derived distributed-amplification
/// noise density. Attenuation is exactly compensated along the span, so
/// alpha enters only through the noise density.
struct FiberParams {
  double length_m = 1000e3;           // L
  double beta2 = -21.7e-27;           // s^2/m
  double gamma_nl = 1.27e-3;          // 1/(W*m)
  double alpha_db_per_km = 0.2;
  double center_freq_hz = 193.414e12;
  double eta = 1.0;                   // phonon occupancy
  int n_wdm = 5;                      // 2C+1, odd
  double baud_hz = 50e9;              // B_ch
  double spacing_hz = 50e9;           // B_sp

  int interferer_pairs() const { return (n_wdm - 1) / 2; }  // C

  /// Noise spectral density of the lossless distributed-amplification link,
  /// alpha*L*h*f*eta with alpha converted from dB/km to 1/m.
  double n_ase() const;
};

struct Waveform {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz = 0.0;
  double center_freq_offset_hz = 0.0;
};

/// Multiplex symbol streams onto sinc pulses (circular/FFT interpolation)
/// with channel k shifted by k*spacing_hz. interferers.size() must be
/// n_wdm-1, ordered k = -C..-1, 1..C. Sample i*osf of the center channel
/// reproduces coi[i] exactly; per-channel average power equals the symbol
/// power. Throws std::invalid_argument if the band does not fit or the
/// channel spacing is not an integer number of FFT bins.
Waveform modulate_wdm(const std::vector<std::complex<double>>& coi,
                      const std::vector<std::vector<std::complex<double>>>& interferers,
                      const FiberParams& p, int osf);

/// Symmetric split-step integration over length_m in n_steps uniform steps.
/// With noise_on, each step injects circular white Gaussian noise of density
/// n_ase()*(dz/L) across the simulation band, drawn from a counter-based
/// stream keyed by (noise_seed, step) for scheduling-independent output.
/// Throws std::runtime_error (with the step index) if the field becomes
/// non-finite.
Waveform ssfm_propagate(const Waveform& w, const FiberParams& p, int n_steps,
                        std::uint64_t noise_seed, bool noise_on);

/// Deterministic single-channel inversion: ssfm_propagate with (-beta2,
/// -gamma), noise off. Input must already be bandpass-limited to the
/// channel of interest.
Waveform dbp_single_channel(const Waveform& w, const FiberParams& p, int n_steps);

/// Brick-wall bandpass to width `band_hz` around offset 0 followed by
/// resampling to `out_samples` (FFT bin truncation/extension).
Waveform bandlimit_resample(const Waveform& w, double band_hz, std::size_t out_samples);

/// Full DSP chain: bandpass to baud_hz, downsample to dbp_osf samples per
/// symbol, single-channel DBP, brick-wall matched filter, downsample to one
/// sample per symbol, rotate by exp(-j*theta_hat).
std::vector<std::complex<double>> receiver_frontend(const Waveform& w, const FiberParams& p,
                                                    double theta_hat, int n_steps,
                                                    int dbp_osf = 2);

/// Raw binary dump: [uint64 n_samples][double sample_rate][double freq_offset]
/// then interleaved re/im doubles. Little-endian, host order.
void write_waveform(std::ostream& os, const Waveform& w);
Waveform read_waveform(std::istream& is);

}  // namespace sicfiber

#endif
