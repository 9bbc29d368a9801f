#include "sicfiber/param_table.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sicfiber {

const ParamRow* ParamTable::find(double power_dbm, double tol) const {
  for (const auto& row : rows) {
    if (std::abs(row.power_dbm - power_dbm) <= tol) return &row;
  }
  return nullptr;
}

void write_param_table(std::ostream& os, const ParamTable& table) {
  os << "power_dbm\tsigma_theta2\tsigma_delta2\tmu_delta\tsigma_n2\tsigma_ase2\n";
  os << std::setprecision(17);
  for (const auto& r : table.rows) {
    os << r.power_dbm << '\t' << r.sigma_theta2 << '\t' << r.sigma_delta2 << '\t' << r.mu_delta
       << '\t' << r.sigma_n2 << '\t' << r.sigma_ase2 << '\n';
  }
}

ParamTable read_param_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("power_dbm", 0) != 0) {
    throw std::runtime_error("read_param_table: missing header line");
  }
  ParamTable table;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ParamRow r;
    if (!(ls >> r.power_dbm >> r.sigma_theta2 >> r.sigma_delta2 >> r.mu_delta >> r.sigma_n2 >>
          r.sigma_ase2)) {
      throw std::runtime_error("read_param_table: malformed row: " + line);
    }
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace sicfiber
