#ifndef SICFIBER_AIR_HPP
#define SICFIBER_AIR_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sicfiber/constellation.hpp"
#include "sicfiber/cpan.hpp"
#include "sicfiber/detector.hpp"

namespace sicfiber {

/// Channel evaluation for one sequence: maps transmit symbols (and the
/// sequence index, for reproducible per-sequence noise streams) to received
/// symbols plus the true phase track when the channel exposes one.
using Channel =
    std::function<CpanOutput(const std::vector<std::complex<double>>&, std::size_t seq_index)>;

struct AirReport {
  double power_dbm = 0.0;
  std::vector<double> per_stage_bits;  // per-channel-use contribution of each stage
  double amplitude_bits = 0.0;         // ring constellations only
  double total_bpcu = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 * stderr over per-sequence totals
  std::size_t n_sequences = 0;
  std::size_t n_symbols = 0;  // per sequence
};

/// Monte-Carlo SIC rate for CSCG inputs of power sigma_x2: per stage,
/// log(pi*e*sigma_x2) minus the surrogate cross-entropy of the stage
/// posteriors at the true symbols. Entropies accumulate in nats and convert
/// to bits once, at report assembly.
AirReport air_cscg(const Channel& ch, const CpanParams& params, double sigma_x2,
                   const SicSchedule& sched, std::size_t n_seq, std::uint64_t seed,
                   ApproxStats* stats = nullptr, std::size_t edge_exclusion = 0);

/// SIC rate for ring constellations: discrete amplitude term
/// H(R) - H_q(R|Y) plus per-stage phase terms log(2*pi) - h_q.
AirReport air_rings(const Channel& ch, const CpanParams& params, const RingConstellation& rings,
                    const SicSchedule& sched, std::size_t n_seq, std::uint64_t seed,
                    ApproxStats* stats = nullptr, std::size_t edge_exclusion = 0);

/// Genie-aided baseline: the channel's true phase track is unwound before a
/// memoryless AWGN detector; approaches log2(1 + sigma_x2/sigma_n2).
AirReport air_genie(const Channel& ch, double sigma_x2, double sigma_n2, std::size_t n,
                    std::size_t n_seq, std::uint64_t seed);

/// Memoryless AWGN-receiver baseline: no phase tracking at all; the detector
/// treats the channel as AWGN with effective noise variance sigma_eff2.
AirReport air_awgn_receiver(const Channel& ch, double sigma_x2, double sigma_eff2, std::size_t n,
                            std::size_t n_seq, std::uint64_t seed,
                            std::size_t edge_exclusion = 0);

/// log2(1 + power/sigma_ase2), the memoryless-AWGN capacity ceiling.
double awgn_capacity_bound(double power, double sigma_ase2);

/// Stream-role keys for deterministic per-sequence draws.
inline constexpr std::uint64_t kRoleSymbols = 1;
inline constexpr std::uint64_t kRoleChannel = 2;
inline constexpr std::uint64_t kRoleTraining = 3;

}  // namespace sicfiber

#endif
