#ifndef SICFIBER_CPAN_HPP
#define SICFIBER_CPAN_HPP

#include <complex>
#include <vector>

#include "sicfiber/constellation.hpp"
#include "sicfiber/rng.hpp"

namespace sicfiber {

struct FiberParams;

/// Surrogate channel: AWGN plus an AR(1) wrapped-phase process,
///   theta_i = mu_delta * theta_{i-1} + sigma_delta * Delta_i,
///   y_i = x_i e^{j theta_i} + n_i.
struct CpanParams {
  double mu_delta = 0.0;      // AR(1) coefficient, in [0,1)
  double sigma_delta2 = 0.0;  // innovation variance, rad^2
  double sigma_theta2 = 0.0;  // stationary phase variance, rad^2
  double sigma_n2 = 0.0;      // additive CSCG noise variance, W

  /// Stationarity: sigma_theta2 * (1 - mu_delta^2) == sigma_delta2.
  bool is_stationary(double tol = 1e-12) const;
};

/// Phase-noise statistics implied by the link physics: stationary variance
/// from the kurtosis-weighted XPM sum over interfering channels, lag-1
/// correlation with the walk-off cutoff, then (mu_delta, sigma_delta2) from
/// the stationary AR(1) relations. sigma_n2 is left at 0; it is fitted from
/// training data or set explicitly.
CpanParams cpan_params_from_link(const FiberParams& link, const ConstellationSpec& spec);

struct CpanOutput {
  std::vector<std::complex<double>> y;
  std::vector<double> theta;  // kept for genie-aided baselines
};

CpanOutput simulate_cpan(const CpanParams& params, const std::vector<std::complex<double>>& x,
                         Rng& rng);

}  // namespace sicfiber

#endif
