#include <doctest.h>

#include <sstream>
#include <string>

#include "sicfiber/config.hpp"
#include "sicfiber/experiment.hpp"
#include "sicfiber/param_table.hpp"

using namespace sicfiber;

namespace {

const char* kSample = R"(# sweep over launch powers
[experiment]
channel = cpan
constellation = urr
n_rings = 32
powers_dbm = -10 -8.5 -6.5 -4
stages = 1 2 4 8
n = 4096
n_seq = 24
sigma_n2 = 2.5e-4
seed = 7
output = out.tsv

[fiber]
n_wdm = 3
baud_hz = 5e10

[numerics]
osf = 8
n_steps = 250
)";

}  // namespace

TEST_CASE("parse a representative config") {
  std::istringstream is(kSample);
  const auto cfg = parse_config(is);
  CHECK(cfg.channel == ChannelKind::Cpan);
  CHECK(cfg.constellation == ConstellationKind::Urr);
  CHECK(cfg.n_rings == 32);
  REQUIRE(cfg.powers_dbm.size() == 4);
  CHECK(cfg.powers_dbm[1] == doctest::Approx(-8.5));
  REQUIRE(cfg.stage_counts.size() == 4);
  CHECK(cfg.stage_counts[3] == 8);
  CHECK(cfg.n == 4096);
  CHECK(cfg.n_seq == 24);
  CHECK(cfg.n_train == 8);  // default
  CHECK(cfg.sigma_n2 == doctest::Approx(2.5e-4));
  CHECK(cfg.seed == 7);
  CHECK(cfg.output_path == "out.tsv");
  CHECK(cfg.fiber.n_wdm == 3);
  CHECK(cfg.fiber.baud_hz == doctest::Approx(5e10));
  CHECK(cfg.fiber.length_m == doctest::Approx(1000e3));  // default survives
  CHECK(cfg.numerics.osf == 8);
  CHECK(cfg.numerics.n_steps == 250);
  CHECK(cfg.numerics.dbp_osf == 2);  // default
}

TEST_CASE("write/parse round trip") {
  std::istringstream is(kSample);
  const auto cfg = parse_config(is);
  std::stringstream ss;
  write_config(ss, cfg);
  const auto back = parse_config(ss);
  CHECK(back.channel == cfg.channel);
  CHECK(back.constellation == cfg.constellation);
  CHECK(back.n_rings == cfg.n_rings);
  CHECK(back.powers_dbm == cfg.powers_dbm);
  CHECK(back.stage_counts == cfg.stage_counts);
  CHECK(back.n == cfg.n);
  CHECK(back.n_seq == cfg.n_seq);
  CHECK(back.sigma_n2 == cfg.sigma_n2);
  CHECK(back.seed == cfg.seed);
  CHECK(back.output_path == cfg.output_path);
  CHECK(back.fiber.n_wdm == cfg.fiber.n_wdm);
  CHECK(back.fiber.baud_hz == cfg.fiber.baud_hz);
  CHECK(back.numerics.osf == cfg.numerics.osf);
  CHECK(back.numerics.n_steps == cfg.numerics.n_steps);
  CHECK(back.numerics.edge_exclusion == cfg.numerics.edge_exclusion);
}

TEST_CASE("parse errors") {
  auto parse = [](const std::string& body) {
    std::istringstream is(body);
    return parse_config(is);
  };
  CHECK_THROWS(parse("[experiment]\nchannel = warp\npowers_dbm = 0\nstages = 1\nn = 8\nn_seq = 1\n"));
  CHECK_THROWS(parse("[experiment]\nchannel = awgn\npowers_dbm =\nstages = 1\nn = 8\nn_seq = 1\n"));
  // stage count must divide n
  CHECK_THROWS(parse("[experiment]\nchannel = awgn\npowers_dbm = 0\nstages = 3\nn = 8\nn_seq = 1\n"));
  // duplicate key
  CHECK_THROWS(parse("[experiment]\nchannel = awgn\nchannel = cpan\npowers_dbm = 0\nstages = 1\nn = 8\nn_seq = 1\n"));
  // urr needs a ring count
  CHECK_THROWS(parse("[experiment]\nchannel = awgn\nconstellation = urr\npowers_dbm = 0\nstages = 1\nn = 8\nn_seq = 1\n"));
  // even WDM count
  CHECK_THROWS(parse("[experiment]\nchannel = fiber\npowers_dbm = 0\nstages = 1\nn = 8\nn_seq = 1\n[fiber]\nn_wdm = 4\n"));
  // non-numeric
  CHECK_THROWS(parse("[experiment]\nchannel = awgn\npowers_dbm = 0 x\nstages = 1\nn = 8\nn_seq = 1\n"));
}

TEST_CASE("parameter table round trip and lookup") {
  ParamTable t;
  t.rows.push_back({-6.5, 2.845e-3, 1.2e-5, 0.997, 3.1e-4, 2.951e-7});
  t.rows.push_back({-4.0, 8.99e-3, 4.0e-5, 0.997, 3.3e-4, 2.951e-7});
  std::stringstream ss;
  write_param_table(ss, t);
  const auto back = read_param_table(ss);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].sigma_theta2 == doctest::Approx(2.845e-3).epsilon(1e-12));
  CHECK(back.rows[1].mu_delta == doctest::Approx(0.997).epsilon(1e-12));
  CHECK(back.rows[0].cpan().sigma_n2 == doctest::Approx(3.1e-4));

  REQUIRE(back.find(-6.5) != nullptr);
  CHECK(back.find(-6.5)->sigma_ase2 == doctest::Approx(2.951e-7));
  CHECK(back.find(-5.0) == nullptr);
}

TEST_CASE("rate table emission") {
  AirReport rep;
  rep.power_dbm = -6.5;
  rep.per_stage_bits = {1.25, 0.5};
  rep.amplitude_bits = 2.0;
  rep.total_bpcu = 3.75;
  rep.ci_halfwidth = 0.01;
  rep.n_sequences = 24;
  rep.n_symbols = 4096;
  const auto recs = records_from_report(rep, "urr", 32, 2, 7);
  REQUIRE(recs.size() == 4);  // 2 stages + amplitude + total
  std::stringstream ss;
  write_air_tsv(ss, recs);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "power_dbm\tconstellation\tn_rings\tS\tstage\tair_bpcu\tci\tn_seq\tn_sym\tseed");
  std::string line;
  int rows = 0;
  bool saw_total = false;
  while (std::getline(ss, line)) {
    ++rows;
    if (line.find("\ttotal\t") != std::string::npos) {
      saw_total = true;
      CHECK(line.find("3.75") != std::string::npos);
    }
  }
  CHECK(rows == 4);
  CHECK(saw_total);
}

TEST_CASE("dbm conversion") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(-6.5) == doctest::Approx(1e-3 * std::pow(10.0, -0.65)).epsilon(1e-12));
}
