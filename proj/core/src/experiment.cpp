#include "sicfiber/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "sicfiber/estimation.hpp"

namespace sicfiber {

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

namespace {

ConstellationSpec make_spec(const ExperimentConfig& cfg, double power_w) {
  ConstellationSpec spec;
  spec.kind = cfg.constellation;
  spec.power = power_w;
  if (spec.kind == ConstellationKind::Urr) spec.rings = urr_design(cfg.n_rings, power_w);
  return spec;
}

// Transmit one sequence through the physical link. `base` keys all random
// draws of this sequence (interferer data and distributed noise).
std::vector<std::complex<double>> fiber_pipeline(const ExperimentConfig& cfg,
                                                 const ConstellationSpec& spec,
                                                 const std::vector<std::complex<double>>& x,
                                                 std::uint64_t base, double theta_hat) {
  std::vector<std::vector<std::complex<double>>> interferers(cfg.fiber.n_wdm - 1);
  for (std::size_t j = 0; j < interferers.size(); ++j) {
    Rng rng(mix_keys(base, 100 + j));
    interferers[j] = sample_symbols(spec, x.size(), rng);
  }
  Waveform w = modulate_wdm(x, interferers, cfg.fiber, cfg.numerics.osf);
  w = ssfm_propagate(w, cfg.fiber, cfg.numerics.n_steps, mix_keys(base, 7), /*noise_on=*/true);
  return receiver_frontend(w, cfg.fiber, theta_hat, cfg.numerics.n_steps, cfg.numerics.dbp_osf);
}

}  // namespace

LinkFit fit_link_params(const ExperimentConfig& cfg, double power_w) {
  const ConstellationSpec spec = make_spec(cfg, power_w);
  TrainingSet train;
  train.pairs.resize(cfg.n_train);
  for (std::size_t k = 0; k < cfg.n_train; ++k) {
    Rng rng(mix_keys(cfg.seed, k, kRoleTraining));
    train.pairs[k].x = sample_symbols(spec, cfg.n, rng);
    train.pairs[k].y = fiber_pipeline(cfg, spec, train.pairs[k].x,
                                      mix_keys(cfg.seed, k, kRoleTraining + 1), 0.0);
  }
  LinkFit fit;
  fit.theta_hat = estimate_mean_phase(train);
  fit.params = cpan_params_from_link(cfg.fiber, spec);
  fit.params.sigma_n2 = estimate_sigma_n(train);
  return fit;
}

Channel make_channel(const ExperimentConfig& cfg, double power_w, const CpanParams& params,
                     double theta_hat) {
  switch (cfg.channel) {
    case ChannelKind::Awgn:
      return [cfg, params](const std::vector<std::complex<double>>& x, std::size_t k) {
        Rng rng(mix_keys(cfg.seed, k, kRoleChannel));
        CpanOutput out;
        out.y.resize(x.size());
        out.theta.assign(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) out.y[i] = x[i] + rng.cscg(params.sigma_n2);
        return out;
      };
    case ChannelKind::Cpan:
      return [cfg, params](const std::vector<std::complex<double>>& x, std::size_t k) {
        Rng rng(mix_keys(cfg.seed, k, kRoleChannel));
        return simulate_cpan(params, x, rng);
      };
    case ChannelKind::Fiber: {
      const ConstellationSpec spec = make_spec(cfg, power_w);
      return [cfg, spec, theta_hat](const std::vector<std::complex<double>>& x, std::size_t k) {
        CpanOutput out;
        out.y = fiber_pipeline(cfg, spec, x, mix_keys(cfg.seed, k, kRoleChannel), theta_hat);
        return out;
      };
    }
  }
  throw std::logic_error("make_channel: unreachable");
}

namespace {

CpanParams resolve_params(const ExperimentConfig& cfg, double power_dbm, double power_w,
                          double* theta_hat) {
  *theta_hat = 0.0;
  switch (cfg.channel) {
    case ChannelKind::Awgn: {
      if (!(cfg.sigma_n2 > 0.0)) {
        throw std::runtime_error("config: awgn channel requires sigma_n2 > 0");
      }
      return {0.0, 0.0, 0.0, cfg.sigma_n2};
    }
    case ChannelKind::Cpan: {
      if (!cfg.param_table_path.empty()) {
        std::ifstream is(cfg.param_table_path);
        if (!is) {
          throw std::runtime_error("config: cannot open parameter table '" +
                                   cfg.param_table_path + "'");
        }
        const ParamTable table = read_param_table(is);
        const ParamRow* row = table.find(power_dbm, 1e-6);
        if (!row) {
          throw std::runtime_error("config: no parameter-table row for power " +
                                   std::to_string(power_dbm) + " dBm");
        }
        return row->cpan();
      }
      if (!(cfg.sigma_n2 > 0.0)) {
        throw std::runtime_error(
            "config: cpan channel needs a parameter table or sigma_n2 > 0");
      }
      CpanParams p = cpan_params_from_link(cfg.fiber, make_spec(cfg, power_w));
      p.sigma_n2 = cfg.sigma_n2;
      return p;
    }
    case ChannelKind::Fiber: {
      const LinkFit fit = fit_link_params(cfg, power_w);
      *theta_hat = fit.theta_hat;
      return fit.params;
    }
  }
  throw std::logic_error("resolve_params: unreachable");
}

}  // namespace

std::vector<AirRecord> records_from_report(const AirReport& rep, const std::string& constellation,
                                           int n_rings, int stages, std::uint64_t seed) {
  std::vector<AirRecord> rows;
  AirRecord base;
  base.power_dbm = rep.power_dbm;
  base.constellation = constellation;
  base.n_rings = n_rings;
  base.stages = stages;
  base.n_seq = rep.n_sequences;
  base.n_sym = rep.n_symbols;
  base.seed = seed;
  for (std::size_t s = 0; s < rep.per_stage_bits.size(); ++s) {
    AirRecord r = base;
    r.stage = std::to_string(s + 1);
    r.air_bpcu = rep.per_stage_bits[s];
    rows.push_back(std::move(r));
  }
  if (constellation == "urr") {
    AirRecord r = base;
    r.stage = "amplitude";
    r.air_bpcu = rep.amplitude_bits;
    rows.push_back(std::move(r));
  }
  AirRecord total = base;
  total.stage = "total";
  total.air_bpcu = rep.total_bpcu;
  total.ci = rep.ci_halfwidth;
  rows.push_back(std::move(total));
  return rows;
}

void write_air_tsv(std::ostream& os, const std::vector<AirRecord>& records) {
  os << "power_dbm\tconstellation\tn_rings\tS\tstage\tair_bpcu\tci\tn_seq\tn_sym\tseed\n";
  os << std::setprecision(12);
  for (const auto& r : records) {
    os << r.power_dbm << '\t' << r.constellation << '\t' << r.n_rings << '\t' << r.stages << '\t'
       << r.stage << '\t' << r.air_bpcu << '\t' << r.ci << '\t' << r.n_seq << '\t' << r.n_sym
       << '\t' << r.seed << '\n';
  }
}

std::vector<AirRecord> run_experiment(const ExperimentConfig& cfg) {
  const std::string cons = cfg.constellation == ConstellationKind::Cscg ? "cscg" : "urr";
  std::vector<AirRecord> rows;
  for (double power_dbm : cfg.powers_dbm) {
    const double power_w = dbm_to_watts(power_dbm);
    double theta_hat = 0.0;
    const CpanParams params = resolve_params(cfg, power_dbm, power_w, &theta_hat);
    const Channel channel = make_channel(cfg, power_w, params, theta_hat);
    const std::size_t edge = static_cast<std::size_t>(cfg.numerics.edge_exclusion);

    for (int s_count : cfg.stage_counts) {
      const SicSchedule sched = SicSchedule::make(cfg.n, s_count);
      AirReport rep;
      if (cfg.constellation == ConstellationKind::Cscg) {
        rep = air_cscg(channel, params, power_w, sched, cfg.n_seq, cfg.seed, nullptr, edge);
      } else {
        rep = air_rings(channel, params, urr_design(cfg.n_rings, power_w), sched, cfg.n_seq,
                        cfg.seed, nullptr, edge);
      }
      rep.power_dbm = power_dbm;  // report the configured grid value
      for (auto& r : records_from_report(rep, cons, cfg.n_rings, s_count, cfg.seed)) {
        rows.push_back(std::move(r));
      }
    }
  }
  return rows;
}

ParamTable emit_param_table(const ExperimentConfig& cfg) {
  ParamTable table;
  const double sigma_ase2 = cfg.fiber.n_ase() * cfg.fiber.baud_hz;
  for (double power_dbm : cfg.powers_dbm) {
    const LinkFit fit = fit_link_params(cfg, dbm_to_watts(power_dbm));
    ParamRow row;
    row.power_dbm = power_dbm;
    row.sigma_theta2 = fit.params.sigma_theta2;
    row.sigma_delta2 = fit.params.sigma_delta2;
    row.mu_delta = fit.params.mu_delta;
    row.sigma_n2 = fit.params.sigma_n2;
    row.sigma_ase2 = sigma_ase2;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace sicfiber
