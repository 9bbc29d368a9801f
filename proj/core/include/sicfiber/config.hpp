#ifndef SICFIBER_CONFIG_HPP
#define SICFIBER_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sicfiber/constellation.hpp"
#include "sicfiber/fiber.hpp"

namespace sicfiber {

enum class ChannelKind { Cpan, Fiber, Awgn };

struct NumericsConfig {
  int osf = 16;            // simulation samples per symbol
  int n_steps = 1000;      // split-step count over the span
  int dbp_osf = 2;         // receiver-side samples per symbol during DBP
  int edge_exclusion = 0;  // symbols dropped at each sequence edge in rate sums
};

/// Flat key-value config with [sections]; see configs/ for the schema.
struct ExperimentConfig {
  ChannelKind channel = ChannelKind::Cpan;
  ConstellationKind constellation = ConstellationKind::Cscg;
  int n_rings = 0;  // URR only
  std::vector<double> powers_dbm;
  std::vector<int> stage_counts;
  std::size_t n = 4096;
  std::size_t n_seq = 24;
  std::size_t n_train = 8;
  double sigma_n2 = 0.0;  // awgn channel noise / cpan fallback when no table row exists
  FiberParams fiber;
  NumericsConfig numerics;
  std::uint64_t seed = 1;
  std::string output_path;
  std::string param_table_path;  // cpan channel parameter source
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& os, const ExperimentConfig& cfg);

}  // namespace sicfiber

#endif
