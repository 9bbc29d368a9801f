#ifndef SICFIBER_PARAM_TABLE_HPP
#define SICFIBER_PARAM_TABLE_HPP

#include <iosfwd>
#include <vector>

#include "sicfiber/cpan.hpp"

namespace sicfiber {

/// One fitted operating point of the surrogate channel.
struct ParamRow {
  double power_dbm = 0.0;
  double sigma_theta2 = 0.0;
  double sigma_delta2 = 0.0;
  double mu_delta = 0.0;
  double sigma_n2 = 0.0;
  double sigma_ase2 = 0.0;

  CpanParams cpan() const { return {mu_delta, sigma_delta2, sigma_theta2, sigma_n2}; }
};

struct ParamTable {
  std::vector<ParamRow> rows;

  /// Row with matching launch power, or nullptr.
  const ParamRow* find(double power_dbm, double tol = 1e-9) const;
};

/// TSV with header:
/// power_dbm  sigma_theta2  sigma_delta2  mu_delta  sigma_n2  sigma_ase2
void write_param_table(std::ostream& os, const ParamTable& table);
ParamTable read_param_table(std::istream& is);

}  // namespace sicfiber

#endif
