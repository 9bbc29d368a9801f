#ifndef SICFIBER_EXPERIMENT_HPP
#define SICFIBER_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sicfiber/air.hpp"
#include "sicfiber/config.hpp"
#include "sicfiber/param_table.hpp"

namespace sicfiber {

/// One output TSV row. `stage` is "1".."S", "amplitude", or "total"; the
/// confidence halfwidth is reported on the total row.
struct AirRecord {
  double power_dbm = 0.0;
  std::string constellation;
  int n_rings = 0;
  int stages = 0;  // S
  std::string stage;
  double air_bpcu = 0.0;
  double ci = 0.0;
  std::size_t n_seq = 0;
  std::size_t n_sym = 0;
  std::uint64_t seed = 0;
};

void write_air_tsv(std::ostream& os, const std::vector<AirRecord>& records);

std::vector<AirRecord> records_from_report(const AirReport& rep, const std::string& constellation,
                                           int n_rings, int stages, std::uint64_t seed);

/// Fitted surrogate parameters of the configured fiber link at one launch
/// power: runs n_train training sequences through the SSFM pipeline, fits
/// sigma_n2 (Rice MLE) and the mean rotation, and computes the phase-noise
/// statistics from the link physics.
struct LinkFit {
  CpanParams params;
  double theta_hat = 0.0;
};
LinkFit fit_link_params(const ExperimentConfig& cfg, double power_w);

/// Channel closure for one configured power; for the fiber channel,
/// theta_hat must come from fit_link_params.
Channel make_channel(const ExperimentConfig& cfg, double power_w, const CpanParams& params,
                     double theta_hat);

/// Full sweep: for each power, resolve surrogate parameters (fit, table
/// lookup, or config), run every requested stage count, and collect rows.
/// Deterministic for a fixed config.
std::vector<AirRecord> run_experiment(const ExperimentConfig& cfg);

/// Power-indexed surrogate parameter table for the configured fiber link.
ParamTable emit_param_table(const ExperimentConfig& cfg);

double dbm_to_watts(double dbm);

}  // namespace sicfiber

#endif
