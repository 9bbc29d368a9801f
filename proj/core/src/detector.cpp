#include "sicfiber/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sicfiber {

SicSchedule SicSchedule::make(std::size_t n, int S) {
  if (S < 1 || n == 0 || n % static_cast<std::size_t>(S) != 0) {
    throw std::invalid_argument("SicSchedule: stage count must divide the block length");
  }
  return {n, S};
}

std::vector<std::size_t> SicSchedule::stage_indices(int s) const {
  if (s < 1 || s > stages) throw std::out_of_range("SicSchedule: stage out of range");
  std::vector<std::size_t> idx;
  idx.reserve(n / stages);
  for (std::size_t i = static_cast<std::size_t>(s - 1); i < n; i += stages) idx.push_back(i);
  return idx;
}

std::vector<std::size_t> SicSchedule::decoded_indices(int s) const {
  if (s < 1 || s > stages) throw std::out_of_range("SicSchedule: stage out of range");
  std::vector<std::size_t> idx;
  idx.reserve((s - 1) * (n / stages));
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(stages) < static_cast<std::size_t>(s - 1)) idx.push_back(i);
  }
  return idx;
}

std::size_t SicSchedule::last_decoded_index(int s) const {
  if (s < 2 || s > stages) throw std::out_of_range("SicSchedule: last decoded index needs s >= 2");
  // 1-based i' = n - S + (s-1)
  return n - static_cast<std::size_t>(stages) + static_cast<std::size_t>(s) - 2;
}

void ApproxStats::note(double variance) {
  ++checked;
  if (!(variance < kSmallAngleVarMax)) ++violations;
}

GaussianMessage observation_message(std::complex<double> y, std::complex<double> x,
                                    double sigma_n2) {
  const double prod = 2.0 * std::abs(y) * std::abs(x);
  if (prod <= 0.0 || sigma_n2 / prod >= kFlatVariance) {
    return {0.0, kFlatVariance};
  }
  return {wrap_phase(std::arg(y) - std::arg(x)), sigma_n2 / prod};
}

namespace {

// AR(1) prediction of the next forward phase message.
inline GaussianMessage ar_forward(const GaussianMessage& m, const CpanParams& p) {
  return {p.mu_delta * m.mean,
          std::min(p.mu_delta * p.mu_delta * m.variance + p.sigma_delta2, kFlatVariance)};
}

// Reverse AR(1) step; diverges (flat) as mu_delta -> 0.
inline GaussianMessage ar_backward(const GaussianMessage& m, const CpanParams& p) {
  if (p.mu_delta == 0.0) return {0.0, kFlatVariance};
  const double var = (m.variance + p.sigma_delta2) / (p.mu_delta * p.mu_delta);
  if (var >= kFlatVariance) return {0.0, kFlatVariance};
  return {m.mean / p.mu_delta, var};
}

}  // namespace

StageResult run_stage(const std::vector<std::complex<double>>& y,
                      const std::map<std::size_t, std::complex<double>>& decoded,
                      const SicSchedule& sched, int s, const CpanParams& params,
                      ApproxStats* stats) {
  const std::size_t n = sched.n;
  if (y.size() != n) throw std::invalid_argument("run_stage: observation length mismatch");
  if (s < 2) throw std::invalid_argument("run_stage: stage 1 bypasses message passing");

  const auto expect = sched.decoded_indices(s);
  if (decoded.size() != expect.size()) {
    throw std::invalid_argument("run_stage: decoded set does not match schedule");
  }
  for (std::size_t i : expect) {
    if (decoded.find(i) == decoded.end()) {
      throw std::invalid_argument("run_stage: decoded set does not match schedule");
    }
  }

  StageResult res;

  // Observation messages on the decoded indices.
  std::vector<GaussianMessage> obs(n);  // flat by default
  for (const auto& [i, xi] : decoded) {
    obs[i] = observation_message(y[i], xi, params.sigma_n2);
    if (stats) stats->note(obs[i].variance);
  }
  res.message_count += decoded.size();

  auto is_decoded = [&](std::size_t i) {
    return i % static_cast<std::size_t>(sched.stages) < static_cast<std::size_t>(s - 1);
  };

  // Rightward pass: fwd[i] is the message arriving at the i-th equality node.
  std::vector<GaussianMessage> fwd(n);
  fwd[0] = {0.0, params.sigma_theta2};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const GaussianMessage through = is_decoded(i) ? gaussian_product(fwd[i], obs[i]) : fwd[i];
    fwd[i + 1] = ar_forward(through, params);
    res.message_count += 2;
  }

  // Leftward pass, seeded at the last previously decoded index i'.
  const std::size_t ip = sched.last_decoded_index(s);
  std::vector<GaussianMessage> bwd(n);  // bwd[i] = message leaving node i leftward, flat for i >= ip
  if (ip >= 1) {
    bwd[ip - 1] = ar_backward(obs[ip], params);
    res.message_count += 2;  // the i' observation recast as a chain message, plus its AR step
    for (std::size_t i = ip - 1; i >= 1; --i) {
      const GaussianMessage through = is_decoded(i) ? gaussian_product(bwd[i], obs[i]) : bwd[i];
      bwd[i - 1] = ar_backward(through, params);
      res.message_count += 2;
    }
  }

  // Downward products at the stage-s indices.
  for (std::size_t i : sched.stage_indices(s)) {
    res.downward.push_back(gaussian_product(fwd[i], bwd[i]));
    ++res.message_count;
  }
  return res;
}

ComplexGaussianMoments posterior_moments(std::complex<double> y, const GaussianMessage& fwd,
                                         double sigma_x2, double sigma_n2) {
  const double sigma_y2 = sigma_x2 + sigma_n2;
  const double ratio = sigma_x2 / sigma_y2;
  // Characteristic-function factor E[e^{-kj theta}] of the phase message.
  auto a = [&](double k) {
    return std::exp(std::complex<double>(-0.5 * k * k * fwd.variance, -k * fwd.mean));
  };
  ComplexGaussianMoments m;
  m.mean = y * ratio * a(1.0);
  const double e_abs2 = ratio * (sigma_n2 + std::norm(y) * ratio);
  m.variance = e_abs2 - std::norm(m.mean);
  m.pseudo_variance = y * y * ratio * ratio * a(2.0) - m.mean * m.mean;
  return m;
}

ComplexGaussianMoments posterior_cscg(std::complex<double> y, const GaussianMessage& fwd,
                                      double sigma_x2, double sigma_n2) {
  ComplexGaussianMoments m = posterior_moments(y, fwd, sigma_x2, sigma_n2);
  m.pseudo_variance = {0.0, 0.0};
  return m;
}

ComplexGaussianMoments detect_stage1_cscg(std::complex<double> y, double sigma_x2,
                                          double sigma_theta2, double sigma_n2) {
  return posterior_moments(y, {0.0, sigma_theta2}, sigma_x2, sigma_n2);
}

AmplitudePosterior detect_amplitudes(std::complex<double> y, const RingConstellation& rings,
                                     double sigma_n2) {
  if (!(sigma_n2 > 0.0)) throw std::invalid_argument("detect_amplitudes: sigma_n2 must be > 0");
  const double ay = std::abs(y);
  std::vector<double> logp(rings.weights.size());
  double max_lp = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < logp.size(); ++l) {
    const double r = rings.radius(static_cast<int>(l));
    logp[l] = std::log(rings.weights[l]) - r * r / sigma_n2 +
              log_bessel_i0(2.0 * ay * r / sigma_n2);
    max_lp = std::max(max_lp, logp[l]);
  }
  double norm = 0.0;
  for (double lp : logp) norm += std::exp(lp - max_lp);
  AmplitudePosterior post;
  post.probs.resize(logp.size());
  for (std::size_t l = 0; l < logp.size(); ++l) {
    post.probs[l] = std::exp(logp[l] - max_lp) / norm;
  }
  return post;
}

double WrappedPhasePosterior::log_pdf(double gamma) const {
  const double d = wrap_phase(mode - gamma);
  return -0.5 * std::log(2.0 * M_PI * variance) - d * d / (2.0 * variance);
}

WrappedPhasePosterior posterior_phase(std::complex<double> y, double r,
                                      const GaussianMessage& fwd, double sigma_n2) {
  const double ay = std::abs(y);
  if (!(r > 0.0) || !(ay > 0.0)) {
    throw std::invalid_argument("posterior_phase: zero amplitude");
  }
  WrappedPhasePosterior post;
  post.mode = wrap_phase(std::arg(y) - fwd.mean);
  post.variance = fwd.variance + sigma_n2 / (2.0 * ay * r);
  return post;
}

}  // namespace sicfiber
