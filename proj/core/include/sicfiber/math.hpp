#ifndef SICFIBER_MATH_HPP
#define SICFIBER_MATH_HPP

#include <complex>

namespace sicfiber {

/// Variance used to represent an uninformative (flat) Gaussian message.
/// Finite so that message products stay total and branch-free.
inline constexpr double kFlatVariance = 1e12;

/// Real Gaussian message carried over a phase edge: (mean, variance),
/// radians and radians^2 when used for phases.
struct GaussianMessage {
  double mean = 0.0;
  double variance = kFlatVariance;

  bool is_flat() const { return variance >= kFlatVariance; }
};

/// Second-order statistics of a complex symbol posterior:
/// mean, variance E|X-mu|^2 and pseudo-variance E[(X-mu)^2].
struct ComplexGaussianMoments {
  std::complex<double> mean{0.0, 0.0};
  double variance = 0.0;
  std::complex<double> pseudo_variance{0.0, 0.0};
};

/// Map x to the interval [-pi, pi). Throws std::invalid_argument for
/// non-finite input.
double wrap_phase(double x);

/// Mean and variance of the (normalized) product of two Gaussians.
/// Throws std::domain_error if both variances are zero with unequal means.
GaussianMessage gaussian_product(const GaussianMessage& m1, const GaussianMessage& m2);

/// log I0(x) for x >= 0, stable for arguments up to 1e6 and beyond
/// (power series below the switch point, asymptotic expansion above).
double log_bessel_i0(double x);

/// Log of the Rice density L(a,b;sigma2) = (2a/s2) exp(-(a^2+b^2)/s2) I0(2ab/s2).
/// Returns -inf at a = 0 (treated as a limit, so likelihood sums skip it).
double rice_log_pdf(double a, double b, double sigma2);

/// Log-density of a general complex Gaussian with given mean, variance and
/// pseudo-variance. Reduces to the circularly symmetric form when the
/// pseudo-variance is zero. Throws std::domain_error on degenerate covariance.
double complex_gaussian_log_pdf(std::complex<double> x, const ComplexGaussianMoments& m);

}  // namespace sicfiber

#endif
