#ifndef SICFIBER_CONSTELLATION_HPP
#define SICFIBER_CONSTELLATION_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "sicfiber/rng.hpp"

namespace sicfiber {

/// Equidistant amplitude rings r_l = l * delta_r with probabilities
/// following a discretized Rayleigh profile.
struct RingConstellation {
  int n_rings = 0;
  double delta_r = 0.0;
  std::vector<double> weights;  // size n_rings, sums to 1

  double radius(int l) const { return (l + 1) * delta_r; }  // l in [0, n_rings)
};

enum class ConstellationKind { Cscg, Urr };

struct ConstellationSpec {
  ConstellationKind kind = ConstellationKind::Cscg;
  double power = 1.0;  // sigma_x^2 = P, watts
  RingConstellation rings;  // URR only
};

/// Design a uniform-phase ring constellation with Rayleigh-profile weights
/// whose average power equals `power` (spacing solved by bisection to
/// 1e-10 relative). Throws std::runtime_error if the root search fails.
RingConstellation urr_design(int n_rings, double power);

/// i.i.d. symbol draws: CSCG of variance `power`, or ring amplitude with
/// probability w_l and phase uniform on [-pi, pi).
std::vector<std::complex<double>> sample_symbols(const ConstellationSpec& spec, std::size_t n,
                                                 Rng& rng);

/// Shannon entropy of the ring weights, in bits.
double amplitude_entropy_bits(const RingConstellation& rings);

/// Fourth absolute moment E|X|^4 of the constellation.
double kurtosis(const ConstellationSpec& spec);

/// Text serialization (n_rings, delta_r, weights) for reproducibility
/// manifests; round-trips through parse_rings.
void write_rings(std::ostream& os, const RingConstellation& rings);
RingConstellation read_rings(std::istream& is);

}  // namespace sicfiber

#endif
