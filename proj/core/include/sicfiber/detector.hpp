#ifndef SICFIBER_DETECTOR_HPP
#define SICFIBER_DETECTOR_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "sicfiber/constellation.hpp"
#include "sicfiber/cpan.hpp"
#include "sicfiber/math.hpp"

namespace sicfiber {

/// Interlaced stage index sets: stage s (1-based) detects symbols
/// {s, s+S, s+2S, ...}; earlier stages' indices form the decoded set I_s.
/// All indices exposed 0-based.
struct SicSchedule {
  std::size_t n = 0;
  int stages = 1;  // S

  static SicSchedule make(std::size_t n, int S);  // throws unless S divides n, S >= 1

  std::vector<std::size_t> stage_indices(int s) const;
  std::vector<std::size_t> decoded_indices(int s) const;  // I_s, empty for s = 1
  /// Largest index decoded before stage s (0-based); only defined for s >= 2.
  std::size_t last_decoded_index(int s) const;
};

/// Validity bookkeeping for the small-angle Gaussian approximation of the
/// phase observation: its variance sigma_n^2/(2|y||x|) should be << 1.
struct ApproxStats {
  std::size_t checked = 0;
  std::size_t violations = 0;
  void note(double variance);
};
inline constexpr double kSmallAngleVarMax = 0.1;  // rad^2, flag threshold

/// Gaussian phase observation from a decoded symbol:
/// mean wrap(angle(y) - angle(x)), variance sigma_n^2/(2|y||x|).
/// Degenerate magnitudes (variance >= kFlatVariance, including zeros)
/// yield a flat message.
GaussianMessage observation_message(std::complex<double> y, std::complex<double> x,
                                    double sigma_n2);

struct StageResult {
  /// Downward phase messages, one per stage-s index in ascending order.
  std::vector<GaussianMessage> downward;
  /// Messages computed in this call: observation inputs, the two leftward
  /// seeds, both chain passes (two per iteration), and the downward products.
  std::size_t message_count = 0;
};

/// Forward-backward Gaussian message passing over the AR(1) phase chain for
/// stage s >= 2. `decoded` must hold exactly the symbols at I_s indices.
/// Flat messages absorb the mu_delta -> 0 backward-step divergence.
StageResult run_stage(const std::vector<std::complex<double>>& y,
                      const std::map<std::size_t, std::complex<double>>& decoded,
                      const SicSchedule& sched, int s, const CpanParams& params,
                      ApproxStats* stats = nullptr);

/// Symbol posterior under a Gaussian phase message `fwd` and CSCG prior:
/// full second-order moments including the pseudo-variance.
ComplexGaussianMoments posterior_moments(std::complex<double> y, const GaussianMessage& fwd,
                                         double sigma_x2, double sigma_n2);

/// Same, reported as circularly symmetric (pseudo-variance forced to zero),
/// the form used for stages s >= 2.
ComplexGaussianMoments posterior_cscg(std::complex<double> y, const GaussianMessage& fwd,
                                      double sigma_x2, double sigma_n2);

/// Memoryless stage-1 detector: posterior_moments with the stationary
/// phase prior [0, sigma_theta2].
ComplexGaussianMoments detect_stage1_cscg(std::complex<double> y, double sigma_x2,
                                          double sigma_theta2, double sigma_n2);

/// Ring-amplitude posterior from |y| alone (amplitudes gain nothing from
/// interference cancellation, so no decoded inputs appear here).
struct AmplitudePosterior {
  std::vector<double> probs;  // over ring indices, sums to 1
};
AmplitudePosterior detect_amplitudes(std::complex<double> y, const RingConstellation& rings,
                                     double sigma_n2);

/// Gaussian posterior over the transmitted phase gamma given the ring
/// amplitude and a phase message: mode wrap(angle(y) - fwd.mean), variance
/// fwd.variance + sigma_n2/(2|y|r). Stage 1 passes fwd = [0, sigma_theta2].
struct WrappedPhasePosterior {
  double mode = 0.0;      // radians
  double variance = 0.0;  // rad^2

  double log_pdf(double gamma) const;
};
WrappedPhasePosterior posterior_phase(std::complex<double> y, double r,
                                      const GaussianMessage& fwd, double sigma_n2);

}  // namespace sicfiber

#endif
