#include "sicfiber/config.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sicfiber {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("config: " + what);
}

class KvMap {
 public:
  void insert(const std::string& key, const std::string& value) {
    if (!map_.emplace(key, value).second) fail("duplicate key '" + key + "'");
  }
  bool has(const std::string& key) const { return map_.count(key) != 0; }
  std::string str(const std::string& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) fail("missing key '" + key + "'");
    return it->second;
  }
  std::string str_or(const std::string& key, const std::string& dflt) const {
    auto it = map_.find(key);
    return it == map_.end() ? dflt : it->second;
  }
  double num(const std::string& key) const { return to_num(key, str(key)); }
  double num_or(const std::string& key, double dflt) const {
    return has(key) ? num(key) : dflt;
  }
  std::vector<double> num_list(const std::string& key) const {
    std::istringstream ls(str(key));
    std::vector<double> out;
    double v = 0.0;
    while (ls >> v) out.push_back(v);
    if (!ls.eof()) fail("non-numeric entry in list '" + key + "'");
    return out;
  }
  const std::map<std::string, std::string>& all() const { return map_; }

 private:
  static double to_num(const std::string& key, const std::string& v) {
    std::istringstream ls(v);
    double out = 0.0;
    if (!(ls >> out) || !(ls >> std::ws).eof()) fail("non-numeric value for '" + key + "'");
    return out;
  }
  std::map<std::string, std::string> map_;
};

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
  std::map<std::string, KvMap> sections;
  std::string line;
  std::string section = "experiment";
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value: " + line);
    sections[section].insert(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }

  const KvMap& exp = sections["experiment"];
  ExperimentConfig cfg;

  const std::string channel = exp.str("channel");
  if (channel == "cpan") cfg.channel = ChannelKind::Cpan;
  else if (channel == "fiber") cfg.channel = ChannelKind::Fiber;
  else if (channel == "awgn") cfg.channel = ChannelKind::Awgn;
  else fail("unknown channel '" + channel + "'");

  const std::string cons = exp.str_or("constellation", "cscg");
  if (cons == "cscg") cfg.constellation = ConstellationKind::Cscg;
  else if (cons == "urr") cfg.constellation = ConstellationKind::Urr;
  else fail("unknown constellation '" + cons + "'");
  cfg.n_rings = static_cast<int>(exp.num_or("n_rings", 0));
  if (cfg.constellation == ConstellationKind::Urr && cfg.n_rings < 1) {
    fail("urr constellation requires n_rings >= 1");
  }

  cfg.powers_dbm = exp.num_list("powers_dbm");
  if (cfg.powers_dbm.empty()) fail("powers_dbm must be non-empty");
  for (double s : exp.num_list("stages")) cfg.stage_counts.push_back(static_cast<int>(s));
  if (cfg.stage_counts.empty()) fail("stages must be non-empty");

  cfg.n = static_cast<std::size_t>(exp.num("n"));
  cfg.n_seq = static_cast<std::size_t>(exp.num("n_seq"));
  cfg.n_train = static_cast<std::size_t>(exp.num_or("n_train", 8));
  cfg.sigma_n2 = exp.num_or("sigma_n2", 0.0);
  cfg.seed = static_cast<std::uint64_t>(exp.num_or("seed", 1));
  cfg.output_path = exp.str_or("output", "");
  cfg.param_table_path = exp.str_or("param_table", "");

  for (int s : cfg.stage_counts) {
    if (s < 1 || cfg.n % static_cast<std::size_t>(s) != 0) {
      fail("every stage count must divide n");
    }
  }

  if (sections.count("fiber")) {
    const KvMap& f = sections["fiber"];
    cfg.fiber.length_m = f.num_or("length_m", cfg.fiber.length_m);
    cfg.fiber.beta2 = f.num_or("beta2_s2_per_m", cfg.fiber.beta2);
    cfg.fiber.gamma_nl = f.num_or("gamma_per_w_m", cfg.fiber.gamma_nl);
    cfg.fiber.alpha_db_per_km = f.num_or("alpha_db_per_km", cfg.fiber.alpha_db_per_km);
    cfg.fiber.center_freq_hz = f.num_or("center_freq_hz", cfg.fiber.center_freq_hz);
    cfg.fiber.eta = f.num_or("eta", cfg.fiber.eta);
    cfg.fiber.n_wdm = static_cast<int>(f.num_or("n_wdm", cfg.fiber.n_wdm));
    cfg.fiber.baud_hz = f.num_or("baud_hz", cfg.fiber.baud_hz);
    cfg.fiber.spacing_hz = f.num_or("spacing_hz", cfg.fiber.spacing_hz);
    if (cfg.fiber.n_wdm < 1 || cfg.fiber.n_wdm % 2 == 0) fail("n_wdm must be odd and >= 1");
  }
  if (sections.count("numerics")) {
    const KvMap& nu = sections["numerics"];
    cfg.numerics.osf = static_cast<int>(nu.num_or("osf", cfg.numerics.osf));
    cfg.numerics.n_steps = static_cast<int>(nu.num_or("n_steps", cfg.numerics.n_steps));
    cfg.numerics.dbp_osf = static_cast<int>(nu.num_or("dbp_osf", cfg.numerics.dbp_osf));
    cfg.numerics.edge_exclusion =
        static_cast<int>(nu.num_or("edge_exclusion", cfg.numerics.edge_exclusion));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open '" + path + "'");
  return parse_config(is);
}

void write_config(std::ostream& os, const ExperimentConfig& cfg) {
  os << std::setprecision(17);
  os << "[experiment]\n";
  os << "channel = "
     << (cfg.channel == ChannelKind::Cpan ? "cpan"
                                          : cfg.channel == ChannelKind::Fiber ? "fiber" : "awgn")
     << '\n';
  os << "constellation = "
     << (cfg.constellation == ConstellationKind::Cscg ? "cscg" : "urr") << '\n';
  os << "n_rings = " << cfg.n_rings << '\n';
  os << "powers_dbm =";
  for (double p : cfg.powers_dbm) os << ' ' << p;
  os << '\n';
  os << "stages =";
  for (int s : cfg.stage_counts) os << ' ' << s;
  os << '\n';
  os << "n = " << cfg.n << '\n';
  os << "n_seq = " << cfg.n_seq << '\n';
  os << "n_train = " << cfg.n_train << '\n';
  os << "sigma_n2 = " << cfg.sigma_n2 << '\n';
  os << "seed = " << cfg.seed << '\n';
  if (!cfg.output_path.empty()) os << "output = " << cfg.output_path << '\n';
  if (!cfg.param_table_path.empty()) os << "param_table = " << cfg.param_table_path << '\n';
  os << "\n[fiber]\n";
  os << "length_m = " << cfg.fiber.length_m << '\n';
  os << "beta2_s2_per_m = " << cfg.fiber.beta2 << '\n';
  os << "gamma_per_w_m = " << cfg.fiber.gamma_nl << '\n';
  os << "alpha_db_per_km = " << cfg.fiber.alpha_db_per_km << '\n';
  os << "center_freq_hz = " << cfg.fiber.center_freq_hz << '\n';
  os << "eta = " << cfg.fiber.eta << '\n';
  os << "n_wdm = " << cfg.fiber.n_wdm << '\n';
  os << "baud_hz = " << cfg.fiber.baud_hz << '\n';
  os << "spacing_hz = " << cfg.fiber.spacing_hz << '\n';
  os << "\n[numerics]\n";
  os << "osf = " << cfg.numerics.osf << '\n';
  os << "n_steps = " << cfg.numerics.n_steps << '\n';
  os << "dbp_osf = " << cfg.numerics.dbp_osf << '\n';
  os << "edge_exclusion = " << cfg.numerics.edge_exclusion << '\n';
}

}  // namespace sicfiber
