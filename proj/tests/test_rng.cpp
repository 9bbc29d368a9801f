#include <doctest.h>

#include <cmath>
#include <vector>

#include "sicfiber/rng.hpp"

using namespace sicfiber;

TEST_CASE("streams are deterministic and key-separated") {
  Rng a(mix_keys(42, 1, 2));
  Rng b(mix_keys(42, 1, 2));
  Rng c(mix_keys(42, 1, 3));
  bool all_equal = true;
  bool any_equal_c = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    all_equal = all_equal && (va == b());
    any_equal_c = any_equal_c || (va == c());
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_c);
  CHECK(mix_keys(1, 2, 3) != mix_keys(1, 3, 2));
  CHECK(mix_keys(1, 2) != mix_keys(2, 1));
}

TEST_CASE("uniform moments") {
  Rng rng(7);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("normal moments") {
  Rng rng(11);
  const int n = 400000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  CHECK(m1 / n == doctest::Approx(0.0).epsilon(0.01).scale(1.0));
  CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(m4 / n == doctest::Approx(3.0).epsilon(0.03));
}

TEST_CASE("cscg moments") {
  Rng rng(13);
  const int n = 200000;
  const double v = 2.5;
  std::complex<double> mean{0.0, 0.0};
  double power = 0.0;
  std::complex<double> pseudo{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const auto z = rng.cscg(v);
    mean += z;
    power += std::norm(z);
    pseudo += z * z;
  }
  CHECK(std::abs(mean) / n < 0.02);
  CHECK(power / n == doctest::Approx(v).epsilon(0.01));
  CHECK(std::abs(pseudo) / n < 0.03);  // circular symmetry
}
