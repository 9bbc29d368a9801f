#ifndef SICFIBER_ESTIMATION_HPP
#define SICFIBER_ESTIMATION_HPP

#include <complex>
#include <vector>

namespace sicfiber {

/// Matched transmit/receive sequences used to fit the surrogate parameters.
struct TrainingSet {
  struct Pair {
    std::vector<std::complex<double>> x;
    std::vector<std::complex<double>> y;
  };
  std::vector<Pair> pairs;

  std::size_t total_symbols() const;
};

/// Additive-noise variance by maximizing the Rice log-likelihood of the
/// amplitude pairs (|y|, |x|). Golden-section search on log(sigma^2) over
/// [1e-12, 1e2], bracketing the method-of-moments initializer
/// mean((|y|-|x|)^2); relative tolerance 1e-8. Noise-free data returns the
/// floor 1e-15 (downstream detectors divide by the result). Throws
/// std::runtime_error with a likelihood profile if bracketing fails.
double estimate_sigma_n(const TrainingSet& t);

/// Mean phase rotation: angle of the averaged correlation sum y*conj(x).
/// Throws std::runtime_error if the correlation sum vanishes.
double estimate_mean_phase(const TrainingSet& t);

}  // namespace sicfiber

#endif
