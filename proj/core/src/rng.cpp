#include "sicfiber/rng.hpp"

#include <cmath>

namespace sicfiber {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

std::uint64_t splitmix_step(std::uint64_t& s) {
  s += kGamma;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t mix_keys(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2) {
  std::uint64_t s = seed;
  std::uint64_t out = splitmix_step(s);
  s ^= k1 * 0xff51afd7ed558ccdull;
  out ^= splitmix_step(s);
  s ^= k2 * 0xc4ceb9fe1a85ec53ull;
  out ^= splitmix_step(s);
  return out;
}

Rng::result_type Rng::operator()() { return splitmix_step(state_); }

double Rng::uniform() {
  // 53 random bits into [0,1)
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

std::complex<double> Rng::cscg(double variance) {
  const double s = std::sqrt(0.5 * variance);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

}  // namespace sicfiber
