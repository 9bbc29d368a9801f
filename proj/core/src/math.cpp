#include "sicfiber/math.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sicfiber {

double wrap_phase(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("wrap_phase: non-finite input");
  }
  double r = std::fmod(x + M_PI, 2.0 * M_PI);
  if (r < 0.0) r += 2.0 * M_PI;
  return r - M_PI;
}

GaussianMessage gaussian_product(const GaussianMessage& m1, const GaussianMessage& m2) {
  const double v1 = m1.variance;
  const double v2 = m2.variance;
  if (v1 == 0.0 && v2 == 0.0) {
    if (m1.mean != m2.mean) {
      throw std::domain_error("gaussian_product: degenerate product of two deltas");
    }
    return {m1.mean, 0.0};
  }
  const double denom = v1 + v2;
  return {(m1.mean * v2 + m2.mean * v1) / denom, v1 * v2 / denom};
}

double log_bessel_i0(double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("log_bessel_i0: negative or NaN argument");
  }
  if (x < 20.0) {
    // I0(x) = sum_k (x^2/4)^k / (k!)^2
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 64; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return std::log(sum);
  }
  // Asymptotic: I0(x) ~ e^x / sqrt(2 pi x) * (1 + 1/(8x) + 9/(128 x^2) + ...)
  const double ix = 1.0 / x;
  const double corr = 1.0 + ix * (0.125 + ix * (0.0703125 + ix * (0.0732421875 + ix * 0.112152099609375)));
  return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(corr);
}

double rice_log_pdf(double a, double b, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("rice_log_pdf: sigma2 must be positive");
  }
  if (a < 0.0 || b < 0.0) {
    throw std::invalid_argument("rice_log_pdf: negative amplitude");
  }
  if (a == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(2.0 * a / sigma2) - (a * a + b * b) / sigma2 +
         log_bessel_i0(2.0 * a * b / sigma2);
}

double complex_gaussian_log_pdf(std::complex<double> x, const ComplexGaussianMoments& m) {
  const double s2 = m.variance;
  const double p2abs = std::abs(m.pseudo_variance);
  if (!(s2 > 0.0) || !(s2 > p2abs)) {
    throw std::domain_error("complex_gaussian_log_pdf: degenerate covariance");
  }
  const std::complex<double> d = x - m.mean;
  if (p2abs == 0.0) {
    return -std::norm(d) / s2 - std::log(M_PI * s2);
  }
  // Augmented 2x2 covariance [[s2, p2],[conj(p2), s2]]
  const double det = s2 * s2 - p2abs * p2abs;
  const double quad = (s2 * std::norm(d) - (std::conj(m.pseudo_variance) * d * d).real()) / det;
  return -std::log(M_PI) - 0.5 * std::log(det) - quad;
}

}  // namespace sicfiber
