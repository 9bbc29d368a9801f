#ifndef SICFIBER_RNG_HPP
#define SICFIBER_RNG_HPP

#include <complex>
#include <cstdint>

namespace sicfiber {

/// Combine a base seed with stream keys into a new 64-bit seed.
/// Used to derive independent, reproducible streams per (sequence, role).
std::uint64_t mix_keys(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0);

/// Counter-style random generator (splitmix64 core). Streams derived via
/// mix_keys are independent for distinct keys, so parallel workers get
/// reproducible draws regardless of scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller (implementation-pinned for
  /// cross-platform reproducibility).
  double normal();

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> cscg(double variance);

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace sicfiber

#endif
