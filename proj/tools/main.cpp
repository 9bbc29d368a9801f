// Command-line front end: parameter fitting, single-point AIR estimation,
// power sweeps, and raw channel simulation, all driven by a config file.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "sicfiber/experiment.hpp"

namespace {

using namespace sicfiber;

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  return os;
}

// Resolve the output stream: --output beats the config key; empty means stdout.
void emit(const std::string& cli_output, const ExperimentConfig& cfg,
          const std::function<void(std::ostream&)>& writer) {
  const std::string path = !cli_output.empty() ? cli_output : cfg.output_path;
  if (path.empty()) {
    writer(std::cout);
  } else {
    auto os = open_output(path);
    writer(os);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"SIC receiver simulator for nonlinear fiber channels"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::optional<std::uint64_t> seed_override;
  int threads = 1;
  app.add_option("-c,--config", config_path, "config file")->required();
  app.add_option("-o,--output", output_path, "output path (default: config key or stdout)");
  app.add_option("-s,--seed", seed_override, "override the config seed");
  app.add_option("-t,--threads", threads, "worker threads (current engine is sequential)")
      ->check(CLI::PositiveNumber);

  double air_power = 0.0;
  auto* sim = app.add_subcommand("simulate", "run one sequence, print x/y symbol pairs");
  auto* fit = app.add_subcommand("fit-params", "fit the surrogate parameter table");
  auto* air = app.add_subcommand("air", "estimate AIRs at a single launch power");
  air->add_option("-p,--power", air_power, "launch power in dBm (default: first configured)");
  auto* sweep = app.add_subcommand("sweep", "estimate AIRs over the configured power grid");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig cfg = load_config(config_path);
  if (seed_override) cfg.seed = *seed_override;

  if (sim->parsed()) {
    cfg.powers_dbm.resize(1);
    const double p = dbm_to_watts(cfg.powers_dbm[0]);
    double theta_hat = 0.0;
    CpanParams params{0.0, 0.0, 0.0, cfg.sigma_n2};
    if (cfg.channel == ChannelKind::Fiber) {
      const LinkFit f = fit_link_params(cfg, p);
      params = f.params;
      theta_hat = f.theta_hat;
    }
    const Channel ch = make_channel(cfg, p, params, theta_hat);
    ConstellationSpec spec{cfg.constellation, p, {}};
    if (spec.kind == ConstellationKind::Urr) spec.rings = urr_design(cfg.n_rings, p);
    Rng rng(mix_keys(cfg.seed, 0, kRoleSymbols));
    const auto x = sample_symbols(spec, cfg.n, rng);
    const auto out = ch(x, 0);
    emit(output_path, cfg, [&](std::ostream& os) {
      os << "x_re\tx_im\ty_re\ty_im\n" << std::setprecision(12);
      for (std::size_t i = 0; i < x.size(); ++i) {
        os << x[i].real() << '\t' << x[i].imag() << '\t' << out.y[i].real() << '\t'
           << out.y[i].imag() << '\n';
      }
    });
    return 0;
  }

  if (fit->parsed()) {
    const ParamTable table = emit_param_table(cfg);
    emit(output_path, cfg, [&](std::ostream& os) { write_param_table(os, table); });
    return 0;
  }

  if (air->parsed()) {
    if (air->count("--power") > 0) {
      cfg.powers_dbm = {air_power};
    } else {
      cfg.powers_dbm.resize(1);
    }
  }
  const auto rows = run_experiment(cfg);
  emit(output_path, cfg, [&](std::ostream& os) { write_air_tsv(os, rows); });
  (void)sweep;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
