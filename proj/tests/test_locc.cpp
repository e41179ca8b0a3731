#include <random>

#include "doctest.h"
#include "icem/locc.hpp"
#include "oracles.hpp"

using namespace icem;

namespace {

// x = D y for a random doubly stochastic D (a product of T-transforms), so x ≺ y.
std::vector<double> mix(std::vector<double> y, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, y.size() - 1);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int step = 0; step < 4; ++step) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    const double s = t(rng);
    const double yi = y[i];
    const double yj = y[j];
    y[i] = s * yi + (1.0 - s) * yj;
    y[j] = s * yj + (1.0 - s) * yi;
  }
  return y;
}

}  // namespace

TEST_CASE("majorization basics") {
  const SchmidtSpectrum uniform({0.25, 0.25, 0.25, 0.25});
  const SchmidtSpectrum product({1.0});
  CHECK(is_majorized_by(uniform, product));
  CHECK_FALSE(is_majorized_by(product, uniform));
  CHECK(is_majorized_by(uniform, uniform));
  // zero padding: (1/2, 1/2) against (1/3, 1/3, 1/3)
  CHECK(is_majorized_by(SchmidtSpectrum({1.0 / 3, 1.0 / 3, 1.0 / 3}),
                        SchmidtSpectrum({0.5, 0.5})));
}

TEST_CASE("incomparable example") {
  const SchmidtSpectrum x({0.5, 0.4, 0.1});
  const SchmidtSpectrum y({0.55, 0.3, 0.15});
  const auto v = locc_verdict(x, y);
  CHECK_FALSE(v.forward);
  CHECK_FALSE(v.backward);
  REQUIRE(v.components.size() == 2);
  // C_1: 0.29 < 0.2925, C_2: 0.2025 > 0.2008125
  CHECK_FALSE(v.components[0].holds);
  CHECK(v.components[1].lhs > v.components[1].rhs);
  CHECK_FALSE(v.components_forward_ordered);
  CHECK_FALSE(v.components_backward_ordered);
}

TEST_CASE("comparable pairs respect component ordering under both schemes") {
  std::mt19937_64 rng(2025);
  for (int n = 0; n < 1000; ++n) {
    const int d = 2 + n % 7;
    const auto y = oracle::random_spectrum(d, rng);
    const auto x = mix(y, rng);
    const SchmidtSpectrum sx(x);
    const SchmidtSpectrum sy(y);
    REQUIRE(is_majorized_by(sx, sy));
    for (Scheme s : {Scheme::Binomial, Scheme::Permutation}) {
      const auto v = locc_verdict(sx, sy, s);
      CHECK(v.forward);
      CHECK(v.components_forward_ordered);
    }
  }
}

TEST_CASE("different ranks are compared at the larger rank") {
  const SchmidtSpectrum bell({0.5, 0.5});
  const SchmidtSpectrum three({0.4, 0.3, 0.3});
  const auto v = locc_verdict(three, bell);
  CHECK(v.forward);
  CHECK_FALSE(v.backward);
  CHECK(v.components.size() == 2);
  CHECK(v.components_forward_ordered);
}
