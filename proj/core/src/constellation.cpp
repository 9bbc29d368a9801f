#include "sicfiber/constellation.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace sicfiber {

namespace {

// Rayleigh-profile weights for spacing dr; returns average power sum_l w_l r_l^2.
double ring_power(int n_rings, double dr, double sigma_x2, std::vector<double>* weights_out) {
  std::vector<double> w(n_rings);
  double wsum = 0.0;
  for (int l = 0; l < n_rings; ++l) {
    const double r = (l + 1) * dr;
    w[l] = r * std::exp(-r * r / sigma_x2);
    wsum += w[l];
  }
  double power = 0.0;
  for (int l = 0; l < n_rings; ++l) {
    w[l] /= wsum;
    const double r = (l + 1) * dr;
    power += w[l] * r * r;
  }
  if (weights_out) *weights_out = std::move(w);
  return power;
}

}  // namespace

RingConstellation urr_design(int n_rings, double power) {
  if (n_rings < 1) throw std::runtime_error("urr_design: need at least one ring");
  if (!(power > 0.0)) throw std::runtime_error("urr_design: power must be positive");

  // ring_power is continuous and strictly increasing in dr, ->0 as dr->0 and
  // unbounded for large dr, so bracket then bisect.
  double lo = std::sqrt(power) * 1e-6;
  double hi = std::sqrt(power);
  while (ring_power(n_rings, hi, power, nullptr) < power) hi *= 2.0;
  while (ring_power(n_rings, lo, power, nullptr) > power) lo *= 0.5;

  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ring_power(n_rings, mid, power, nullptr) < power ? lo : hi) = mid;
  }
  if ((hi - lo) > 1e-9 * hi) throw std::runtime_error("urr_design: bisection did not converge");

  RingConstellation rc;
  rc.n_rings = n_rings;
  rc.delta_r = 0.5 * (lo + hi);
  ring_power(n_rings, rc.delta_r, power, &rc.weights);
  return rc;
}

std::vector<std::complex<double>> sample_symbols(const ConstellationSpec& spec, std::size_t n,
                                                 Rng& rng) {
  std::vector<std::complex<double>> x(n);
  if (spec.kind == ConstellationKind::Cscg) {
    for (auto& xi : x) xi = rng.cscg(spec.power);
    return x;
  }
  const auto& rc = spec.rings;
  if (rc.n_rings < 1 || rc.weights.size() != static_cast<std::size_t>(rc.n_rings)) {
    throw std::invalid_argument("sample_symbols: ring constellation not designed");
  }
  std::vector<double> cdf(rc.weights.size());
  std::partial_sum(rc.weights.begin(), rc.weights.end(), cdf.begin());
  cdf.back() = 1.0;
  for (auto& xi : x) {
    const double u = rng.uniform();
    int l = 0;
    while (cdf[l] < u) ++l;
    const double phi = 2.0 * M_PI * rng.uniform() - M_PI;
    xi = std::polar(rc.radius(l), phi);
  }
  return x;
}

double amplitude_entropy_bits(const RingConstellation& rings) {
  double h = 0.0;
  for (double w : rings.weights) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

double kurtosis(const ConstellationSpec& spec) {
  if (spec.kind == ConstellationKind::Cscg) {
    return 2.0 * spec.power * spec.power;
  }
  double q = 0.0;
  for (int l = 0; l < spec.rings.n_rings; ++l) {
    const double r2 = spec.rings.radius(l) * spec.rings.radius(l);
    q += spec.rings.weights[l] * r2 * r2;
  }
  return q;
}

void write_rings(std::ostream& os, const RingConstellation& rings) {
  os.precision(17);
  os << rings.n_rings << ' ' << rings.delta_r;
  for (double w : rings.weights) os << ' ' << w;
  os << '\n';
}

RingConstellation read_rings(std::istream& is) {
  RingConstellation rc;
  is >> rc.n_rings >> rc.delta_r;
  rc.weights.resize(rc.n_rings > 0 ? rc.n_rings : 0);
  for (auto& w : rc.weights) is >> w;
  if (!is) throw std::runtime_error("read_rings: malformed ring record");
  return rc;
}

}  // namespace sicfiber
