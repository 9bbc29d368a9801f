#include "sicfiber/cpan.hpp"

#include <cmath>
#include <stdexcept>

#include "sicfiber/fiber.hpp"

namespace sicfiber {

bool CpanParams::is_stationary(double tol) const {
  const double lhs = sigma_theta2 * (1.0 - mu_delta * mu_delta);
  return std::abs(lhs - sigma_delta2) <= tol * std::max(1.0, sigma_theta2);
}

CpanParams cpan_params_from_link(const FiberParams& link, const ConstellationSpec& spec) {
  if (link.beta2 == 0.0) {
    throw std::domain_error("cpan_params_from_link: beta2 = 0, phase-noise model undefined");
  }
  const int c = link.interferer_pairs();
  if (c < 1) {
    throw std::invalid_argument("cpan_params_from_link: need at least one interfering pair");
  }
  const double t_sym = 1.0 / link.baud_hz;
  const double q = kurtosis(spec);
  const double sx2 = spec.power;
  const double excess = q - sx2 * sx2;  // vanishes for constant-modulus inputs
  const double pref = 4.0 * link.gamma_nl * link.gamma_nl * link.length_m * t_sym;

  double sigma_theta2 = 0.0;
  double r = 0.0;
  for (int k = -c; k <= c; ++k) {
    if (k == 0) continue;
    const double walkoff = std::abs(link.beta2) * 2.0 * M_PI * link.spacing_hz * std::abs(k);
    sigma_theta2 += pref * excess / walkoff;
    r += pref * excess / walkoff *
         std::max(0.0, 1.0 - t_sym / (walkoff * link.length_m));
  }

  CpanParams out;
  out.sigma_theta2 = sigma_theta2;
  if (sigma_theta2 > 0.0) {
    out.mu_delta = r / sigma_theta2;
    out.sigma_delta2 = sigma_theta2 - r * r / sigma_theta2;
  }
  return out;
}

CpanOutput simulate_cpan(const CpanParams& params, const std::vector<std::complex<double>>& x,
                         Rng& rng) {
  if (x.empty()) throw std::invalid_argument("simulate_cpan: empty input");
  CpanOutput out;
  out.y.resize(x.size());
  out.theta.resize(x.size());

  const double sigma_theta = std::sqrt(params.sigma_theta2);
  const double sigma_delta = std::sqrt(params.sigma_delta2);
  double theta = sigma_theta * rng.normal();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) theta = params.mu_delta * theta + sigma_delta * rng.normal();
    out.theta[i] = theta;
    out.y[i] = x[i] * std::polar(1.0, theta) + rng.cscg(params.sigma_n2);
  }
  return out;
}

}  // namespace sicfiber
