#include "sicfiber/air.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "sicfiber/math.hpp"

namespace sicfiber {

namespace {

constexpr double kLog2 = 0.6931471805599453;

// 1.96 * standard error of the per-sequence totals.
double ci_halfwidth(const std::vector<double>& totals) {
  const std::size_t m = totals.size();
  if (m < 2) return 0.0;
  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= static_cast<double>(m - 1);
  return 1.96 * std::sqrt(var / static_cast<double>(m));
}

void check_moments(const ComplexGaussianMoments& m, std::size_t index) {
  if (!(m.variance > 0.0)) {
    throw std::runtime_error("air: degenerate posterior variance at symbol " +
                             std::to_string(index));
  }
}

}  // namespace

AirReport air_cscg(const Channel& ch, const CpanParams& params, double sigma_x2,
                   const SicSchedule& sched, std::size_t n_seq, std::uint64_t seed,
                   ApproxStats* stats, std::size_t edge_exclusion) {
  const std::size_t n = sched.n;
  if (2 * edge_exclusion >= n) throw std::invalid_argument("air_cscg: edge exclusion too large");
  const std::size_t lo = edge_exclusion;
  const std::size_t hi = n - edge_exclusion;
  const double n_eff = static_cast<double>(hi - lo);
  const double h_x = std::log(M_PI * M_E * sigma_x2);  // nats
  ConstellationSpec spec{ConstellationKind::Cscg, sigma_x2, {}};

  std::vector<double> stage_nats(sched.stages, 0.0);  // sum over sequences of per-cu nats
  std::vector<double> seq_totals;
  seq_totals.reserve(n_seq);

  for (std::size_t k = 0; k < n_seq; ++k) {
    Rng rng(mix_keys(seed, k, kRoleSymbols));
    const auto x = sample_symbols(spec, n, rng);
    const auto out = ch(x, k);

    double seq_nats = 0.0;
    for (int s = 1; s <= sched.stages; ++s) {
      double acc = 0.0;
      if (s == 1) {
        for (std::size_t i : sched.stage_indices(1)) {
          if (i < lo || i >= hi) continue;
          const auto m = detect_stage1_cscg(out.y[i], sigma_x2, params.sigma_theta2,
                                            params.sigma_n2);
          check_moments(m, i);
          acc += h_x + complex_gaussian_log_pdf(x[i], m);
        }
      } else {
        std::map<std::size_t, std::complex<double>> decoded;
        for (std::size_t i : sched.decoded_indices(s)) decoded.emplace(i, x[i]);
        const auto res = run_stage(out.y, decoded, sched, s, params, stats);
        const auto idx = sched.stage_indices(s);
        for (std::size_t j = 0; j < idx.size(); ++j) {
          if (idx[j] < lo || idx[j] >= hi) continue;
          const auto m = posterior_cscg(out.y[idx[j]], res.downward[j], sigma_x2,
                                        params.sigma_n2);
          check_moments(m, idx[j]);
          acc += h_x + complex_gaussian_log_pdf(x[idx[j]], m);
        }
      }
      stage_nats[s - 1] += acc / n_eff;
      seq_nats += acc / n_eff;
    }
    seq_totals.push_back(seq_nats / kLog2);
  }

  AirReport rep;
  rep.power_dbm = 10.0 * std::log10(sigma_x2 / 1e-3);
  rep.per_stage_bits.resize(sched.stages);
  for (int s = 0; s < sched.stages; ++s) {
    rep.per_stage_bits[s] = stage_nats[s] / static_cast<double>(n_seq) / kLog2;
    rep.total_bpcu += rep.per_stage_bits[s];
  }
  rep.ci_halfwidth = ci_halfwidth(seq_totals);
  rep.n_sequences = n_seq;
  rep.n_symbols = n;
  return rep;
}

AirReport air_rings(const Channel& ch, const CpanParams& params, const RingConstellation& rings,
                    const SicSchedule& sched, std::size_t n_seq, std::uint64_t seed,
                    ApproxStats* stats, std::size_t edge_exclusion) {
  const std::size_t n = sched.n;
  if (2 * edge_exclusion >= n) throw std::invalid_argument("air_rings: edge exclusion too large");
  const std::size_t lo = edge_exclusion;
  const std::size_t hi = n - edge_exclusion;
  const double n_eff = static_cast<double>(hi - lo);
  double power = 0.0;
  for (int l = 0; l < rings.n_rings; ++l) {
    power += rings.weights[l] * rings.radius(l) * rings.radius(l);
  }
  ConstellationSpec spec{ConstellationKind::Urr, power, rings};
  const double h_r_bits = amplitude_entropy_bits(rings);
  const double h_gamma = std::log(2.0 * M_PI);  // nats

  std::vector<double> stage_nats(sched.stages, 0.0);
  double amp_bits_sum = 0.0;
  std::vector<double> seq_totals;
  seq_totals.reserve(n_seq);

  for (std::size_t k = 0; k < n_seq; ++k) {
    Rng rng(mix_keys(seed, k, kRoleSymbols));
    const auto x = sample_symbols(spec, n, rng);
    const auto out = ch(x, k);

    // Amplitude part: memoryless, one term per symbol.
    double amp_nats = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const int l = static_cast<int>(std::lround(std::abs(x[i]) / rings.delta_r)) - 1;
      const auto post = detect_amplitudes(out.y[i], rings, params.sigma_n2);
      amp_nats += std::log(post.probs[static_cast<std::size_t>(l)]);
    }
    const double amp_bits = h_r_bits + amp_nats / n_eff / kLog2;
    amp_bits_sum += amp_bits;

    double seq_nats = 0.0;
    for (int s = 1; s <= sched.stages; ++s) {
      double acc = 0.0;
      if (s == 1) {
        const GaussianMessage prior{0.0, params.sigma_theta2};
        for (std::size_t i : sched.stage_indices(1)) {
          if (i < lo || i >= hi) continue;
          const auto post = posterior_phase(out.y[i], std::abs(x[i]), prior, params.sigma_n2);
          acc += h_gamma + post.log_pdf(std::arg(x[i]));
        }
      } else {
        std::map<std::size_t, std::complex<double>> decoded;
        for (std::size_t i : sched.decoded_indices(s)) decoded.emplace(i, x[i]);
        const auto res = run_stage(out.y, decoded, sched, s, params, stats);
        const auto idx = sched.stage_indices(s);
        for (std::size_t j = 0; j < idx.size(); ++j) {
          if (idx[j] < lo || idx[j] >= hi) continue;
          const auto post = posterior_phase(out.y[idx[j]], std::abs(x[idx[j]]), res.downward[j],
                                            params.sigma_n2);
          acc += h_gamma + post.log_pdf(std::arg(x[idx[j]]));
        }
      }
      stage_nats[s - 1] += acc / n_eff;
      seq_nats += acc / n_eff;
    }
    seq_totals.push_back(amp_bits + seq_nats / kLog2);
  }

  AirReport rep;
  rep.power_dbm = 10.0 * std::log10(power / 1e-3);
  rep.per_stage_bits.resize(sched.stages);
  for (int s = 0; s < sched.stages; ++s) {
    rep.per_stage_bits[s] = stage_nats[s] / static_cast<double>(n_seq) / kLog2;
    rep.total_bpcu += rep.per_stage_bits[s];
  }
  rep.amplitude_bits = amp_bits_sum / static_cast<double>(n_seq);
  rep.total_bpcu += rep.amplitude_bits;
  rep.ci_halfwidth = ci_halfwidth(seq_totals);
  rep.n_sequences = n_seq;
  rep.n_symbols = n;
  return rep;
}

namespace {

// Shared body for the two memoryless AWGN-detector baselines.
AirReport air_awgn_detector(const Channel& ch, double sigma_x2, double det_sigma_n2,
                            std::size_t n, std::size_t n_seq, std::uint64_t seed,
                            bool unwind_phase, std::size_t edge_exclusion = 0) {
  if (2 * edge_exclusion >= n) throw std::invalid_argument("air: edge exclusion too large");
  const std::size_t lo = edge_exclusion;
  const std::size_t hi = n - edge_exclusion;
  const double h_x = std::log(M_PI * M_E * sigma_x2);
  ConstellationSpec spec{ConstellationKind::Cscg, sigma_x2, {}};
  const GaussianMessage zero_phase{0.0, 0.0};

  std::vector<double> seq_totals;
  seq_totals.reserve(n_seq);
  double nats = 0.0;
  for (std::size_t k = 0; k < n_seq; ++k) {
    Rng rng(mix_keys(seed, k, kRoleSymbols));
    const auto x = sample_symbols(spec, n, rng);
    const auto out = ch(x, k);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      std::complex<double> yi = out.y[i];
      if (unwind_phase) yi *= std::polar(1.0, -out.theta[i]);
      const auto m = posterior_moments(yi, zero_phase, sigma_x2, det_sigma_n2);
      check_moments(m, i);
      acc += h_x + complex_gaussian_log_pdf(x[i], m);
    }
    acc /= static_cast<double>(hi - lo);
    nats += acc;
    seq_totals.push_back(acc / kLog2);
  }

  AirReport rep;
  rep.power_dbm = 10.0 * std::log10(sigma_x2 / 1e-3);
  rep.per_stage_bits = {nats / static_cast<double>(n_seq) / kLog2};
  rep.total_bpcu = rep.per_stage_bits[0];
  rep.ci_halfwidth = ci_halfwidth(seq_totals);
  rep.n_sequences = n_seq;
  rep.n_symbols = n;
  return rep;
}

}  // namespace

AirReport air_genie(const Channel& ch, double sigma_x2, double sigma_n2, std::size_t n,
                    std::size_t n_seq, std::uint64_t seed) {
  return air_awgn_detector(ch, sigma_x2, sigma_n2, n, n_seq, seed, /*unwind_phase=*/true);
}

AirReport air_awgn_receiver(const Channel& ch, double sigma_x2, double sigma_eff2, std::size_t n,
                            std::size_t n_seq, std::uint64_t seed, std::size_t edge_exclusion) {
  return air_awgn_detector(ch, sigma_x2, sigma_eff2, n, n_seq, seed, /*unwind_phase=*/false,
                           edge_exclusion);
}

double awgn_capacity_bound(double power, double sigma_ase2) {
  if (!(power > 0.0) || !(sigma_ase2 > 0.0)) {
    throw std::invalid_argument("awgn_capacity_bound: arguments must be positive");
  }
  return std::log2(1.0 + power / sigma_ase2);
}

}  // namespace sicfiber
