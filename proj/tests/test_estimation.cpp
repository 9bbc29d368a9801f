#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "sicfiber/estimation.hpp"
#include "sicfiber/rng.hpp"

using namespace sicfiber;

namespace {

TrainingSet make_training(double sigma_n2, double phase, std::size_t n_pairs, std::size_t n,
                          std::uint64_t seed) {
  TrainingSet t;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    Rng rng(mix_keys(seed, k));
    TrainingSet::Pair p;
    p.x.reserve(n);
    p.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = rng.cscg(1.0);
      p.x.push_back(x);
      p.y.push_back(x * std::polar(1.0, phase) + rng.cscg(sigma_n2));
    }
    t.pairs.push_back(std::move(p));
  }
  return t;
}

}  // namespace

TEST_CASE("noise variance recovery") {
  const auto t = make_training(1e-6, 0.0, 8, 4096, 1);
  CHECK(t.total_symbols() == 8 * 4096);
  CHECK(estimate_sigma_n(t) == doctest::Approx(1e-6).epsilon(0.03));
}

TEST_CASE("noise variance recovery at other scales") {
  CHECK(estimate_sigma_n(make_training(1e-3, 0.0, 8, 4096, 2)) ==
        doctest::Approx(1e-3).epsilon(0.03));
  CHECK(estimate_sigma_n(make_training(1e-1, 0.0, 16, 4096, 3)) ==
        doctest::Approx(1e-1).epsilon(0.03));
}

TEST_CASE("noise-free data returns the floor") {
  const auto t = make_training(0.0, 0.0, 2, 512, 4);
  CHECK(estimate_sigma_n(t) <= 1e-12);
  CHECK(estimate_sigma_n(t) > 0.0);
}

TEST_CASE("amplitude likelihood ignores a common rotation") {
  const auto t0 = make_training(1e-4, 0.0, 4, 2048, 5);
  const auto t1 = make_training(1e-4, 1.1, 4, 2048, 5);
  CHECK(estimate_sigma_n(t0) == doctest::Approx(estimate_sigma_n(t1)).epsilon(0.05));
}

TEST_CASE("mean phase") {
  // noiseless: exact
  const auto t = make_training(0.0, 0.37, 2, 1024, 6);
  CHECK(estimate_mean_phase(t) == doctest::Approx(0.37).epsilon(1e-12));

  const auto t0 = make_training(0.0, 0.0, 2, 1024, 7);
  CHECK(estimate_mean_phase(t0) == doctest::Approx(0.0));

  // noisy, consistent
  const auto tn = make_training(1e-4, -1.9, 8, 4096, 8);
  CHECK(estimate_mean_phase(tn) == doctest::Approx(-1.9).epsilon(1e-2));

  // result lands in [-pi, pi) even when the true rotation wraps
  const auto tw = make_training(0.0, 3.0, 2, 1024, 9);
  const double ph = estimate_mean_phase(tw);
  CHECK(ph >= -M_PI);
  CHECK(ph < M_PI);
  CHECK(ph == doctest::Approx(3.0).epsilon(1e-12));

  TrainingSet empty;
  empty.pairs.push_back({{{0.0, 0.0}}, {{0.0, 0.0}}});
  CHECK_THROWS_AS(estimate_mean_phase(empty), std::runtime_error);
}
