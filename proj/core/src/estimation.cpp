#include "sicfiber/estimation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sicfiber/math.hpp"

namespace sicfiber {

std::size_t TrainingSet::total_symbols() const {
  std::size_t n = 0;
  for (const auto& p : pairs) n += p.x.size();
  return n;
}

namespace {

double rice_log_likelihood(const TrainingSet& t, double sigma2) {
  double sum = 0.0;
  for (const auto& p : t.pairs) {
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      const double a = std::abs(p.y[i]);
      if (a == 0.0) continue;  // measure-zero boundary point
      sum += rice_log_pdf(a, std::abs(p.x[i]), sigma2);
    }
  }
  return sum;
}

}  // namespace

double estimate_sigma_n(const TrainingSet& t) {
  if (t.pairs.empty()) throw std::invalid_argument("estimate_sigma_n: empty training set");
  for (const auto& p : t.pairs) {
    if (p.x.size() != p.y.size() || p.x.empty()) {
      throw std::invalid_argument("estimate_sigma_n: length-mismatched pair");
    }
  }

  // Method-of-moments initializer; also the noise-free short circuit.
  double mom = 0.0;
  for (const auto& p : t.pairs) {
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      const double d = std::abs(p.y[i]) - std::abs(p.x[i]);
      mom += d * d;
    }
  }
  mom /= static_cast<double>(t.total_symbols());
  const double kFloor = 1e-15;
  if (mom < 1e-12) return std::max(mom, kFloor);

  // Coarse scan on log(sigma^2), then golden-section inside the best cell.
  const double lo_log = std::log(1e-12);
  const double hi_log = std::log(1e2);
  constexpr int kGrid = 33;
  double best_ll = -std::numeric_limits<double>::infinity();
  int best = 0;
  double grid_ll[kGrid];
  for (int g = 0; g < kGrid; ++g) {
    const double s2 = std::exp(lo_log + (hi_log - lo_log) * g / (kGrid - 1));
    grid_ll[g] = rice_log_likelihood(t, s2);
    if (grid_ll[g] > best_ll) {
      best_ll = grid_ll[g];
      best = g;
    }
  }
  if (best == 0 || best == kGrid - 1) {
    std::ostringstream msg;
    msg << "estimate_sigma_n: likelihood maximum on bracket boundary; profile:";
    for (int g = 0; g < kGrid; ++g) {
      msg << " (" << std::exp(lo_log + (hi_log - lo_log) * g / (kGrid - 1)) << ", "
          << grid_ll[g] << ")";
    }
    throw std::runtime_error(msg.str());
  }

  const double cell = (hi_log - lo_log) / (kGrid - 1);
  double a = lo_log + cell * (best - 1);
  double b = lo_log + cell * (best + 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = rice_log_likelihood(t, std::exp(c));
  double fd = rice_log_likelihood(t, std::exp(d));
  while (b - a > 1e-8) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = rice_log_likelihood(t, std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = rice_log_likelihood(t, std::exp(d));
    }
  }
  return std::exp(0.5 * (a + b));
}

double estimate_mean_phase(const TrainingSet& t) {
  if (t.pairs.empty()) throw std::invalid_argument("estimate_mean_phase: empty training set");
  std::complex<double> corr{0.0, 0.0};
  for (const auto& p : t.pairs) {
    if (p.x.size() != p.y.size()) {
      throw std::invalid_argument("estimate_mean_phase: length-mismatched pair");
    }
    for (std::size_t i = 0; i < p.x.size(); ++i) corr += p.y[i] * std::conj(p.x[i]);
  }
  corr /= static_cast<double>(t.total_symbols());
  if (corr == std::complex<double>{0.0, 0.0}) {
    throw std::runtime_error("estimate_mean_phase: zero correlation sum, phase undefined");
  }
  return std::arg(corr);
}

}  // namespace sicfiber
