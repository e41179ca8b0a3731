#include <cmath>
#include <random>

#include "doctest.h"
#include "icem/figures.hpp"
#include "icem/measures.hpp"
#include "oracles.hpp"

using namespace icem;

namespace {

PureState ghz3() {
  Vector v = Vector::Zero(8);
  v[0] = v[7] = 1.0;
  return PureState::normalized({2, 2, 2}, v);
}

PureState w3() {
  Vector v = Vector::Zero(8);
  v[1] = v[2] = v[4] = 1.0;
  return PureState::normalized({2, 2, 2}, v);
}

PureState zero_bell() {
  Vector v = Vector::Zero(8);
  v[0] = v[3] = 1.0;
  return PureState::normalized({2, 2, 2}, v);
}

const MeasureOptions kPrinted{Scheme::Permutation, std::nullopt};

}  // namespace

TEST_CASE("scheme coefficients") {
  CHECK(scheme_coefficients(Scheme::Binomial, 3) == std::vector<double>{1, 3, 3, 1});
  CHECK(scheme_coefficients(Scheme::Permutation, 3) == std::vector<double>{1, 3, 6, 6});
  CHECK(scheme_coefficients(Scheme::Binomial, 1) ==
        scheme_coefficients(Scheme::Permutation, 1));
  CHECK(parse_scheme("printed") == Scheme::Permutation);
  CHECK(parse_scheme("permutation") == Scheme::Permutation);
  CHECK(parse_scheme("binomial") == Scheme::Binomial);
  CHECK_THROWS_AS(parse_scheme("other"), DomainError);
  CHECK_THROWS_AS(scheme_coefficients(Scheme::Binomial, -1), DomainError);
}

TEST_CASE("ICEM of the reference spectra") {
  const auto phi1 = phi1_spectrum();
  const auto rep = icem_pure(phi1);
  CHECK(rep.rank_used == 3);
  CHECK(rep.value == doctest::Approx(37.0 / 72.0).epsilon(1e-14));
  CHECK(std::abs(rep.value - 0.5139) < 1e-4);
  CHECK(icem_pure(phi1, kPrinted).value == doctest::Approx(17.0 / 36.0).epsilon(1e-14));

  const double b2 = (9.0 + std::sqrt(13.0)) / 24.0;
  const auto phi2 = phi2_spectrum(0.25, b2);
  const auto m = trace_powers(phi2, 3);
  CHECK(m(2) == doctest::Approx(7.0 / 18.0).epsilon(1e-13));
  CHECK(m(3) == doctest::Approx(0.171875).epsilon(1e-12));
  const double c2 = icem_pure(phi2).value;
  CHECK(std::abs(c2 - 0.512587) < 1e-6);
  CHECK(std::abs(c2 - 0.5126) < 1e-4);
}

TEST_CASE("ICEM edge cases") {
  CHECK(icem_pure(SchmidtSpectrum({1.0})).value == 0.0);
  CHECK(icem_pure(SchmidtSpectrum({1.0, 0.0, 0.0})).value == 0.0);
  CHECK(icem_pure(SchmidtSpectrum({0.5, 0.5})).value == doctest::Approx(0.25));
  // maximally mixed in d = 4: 1 - 1/8 (1 + 3/4 + 3/16 + 1/64)
  const auto mm4 = icem_pure(SchmidtSpectrum({0.25, 0.25, 0.25, 0.25})).value;
  CHECK(mm4 == doctest::Approx(1.0 - (1.0 + 0.75 + 0.1875 + 1.0 / 64.0) / 8.0));
  // forcing a larger r on a rank-1 spectrum still gives zero
  const MeasureOptions forced{Scheme::Binomial, 4};
  CHECK(std::abs(icem_pure(SchmidtSpectrum({1.0}), forced).value) < 1e-15);
  CHECK_THROWS_AS(icem_pure(SchmidtSpectrum({1.0}), MeasureOptions{Scheme::Binomial, -1}),
                  DomainError);
}

TEST_CASE("value jumps when a Schmidt coefficient crosses the rank threshold") {
  // (1/2, 1/2 - e, e) tends to 1 - (1 + 2/2 + 1/4) / 4 = 0.4375, not the rank-2 value 0.25
  const double e = 1e-8;
  CHECK(icem_pure(SchmidtSpectrum({0.5, 0.5 - e, e})).value == doctest::Approx(0.4375).epsilon(1e-6));
  CHECK(icem_pure(SchmidtSpectrum({0.5, 0.5 - 1e-12, 1e-12})).value == doctest::Approx(0.25));
}

TEST_CASE("components sum to the binomial ICEM") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 300; ++n) {
    const auto lambda = oracle::random_spectrum(2 + n % 6, rng);
    const auto rep = icem_pure(SchmidtSpectrum(lambda));
    double sum = 0.0;
    for (double c : rep.components) sum += c;
    CHECK(rep.components.front() == 0.0);
    CHECK(sum == doctest::Approx(rep.value).epsilon(1e-12));
    CHECK(rep.value >= 0.0);
    CHECK(rep.value < 1.0);
  }
}

TEST_CASE("components of the majorization example") {
  const SchmidtSpectrum x({0.5, 0.4, 0.1});
  const SchmidtSpectrum y({0.55, 0.3, 0.15});
  CHECK(std::abs(icem_component(x, 1) - 0.29) < 1e-12);
  CHECK(std::abs(icem_component(y, 1) - 0.2925) < 1e-12);
  CHECK(std::abs(icem_component(x, 2) - 0.2025) < 1e-12);
  CHECK(std::abs(icem_component(y, 2) - 0.2008125) < 1e-12);
  CHECK_THROWS_AS(icem_component(x, 3), DomainError);
}

TEST_CASE("printed scheme can go negative at rank 4") {
  const auto v = icem_pure(SchmidtSpectrum({0.25, 0.25, 0.25, 0.25}), kPrinted).value;
  CHECK(v == doctest::Approx(1.0 - (1.0 + 0.75 + 6.0 / 16.0 + 6.0 / 64.0) / 8.0));
  const auto low = icem_pure(SchmidtSpectrum({0.97, 0.01, 0.01, 0.01}), kPrinted).value;
  CHECK(low < 0.0);
}

TEST_CASE("concurrence and the tilde measure on the reference spectra") {
  const double b2 = (9.0 + std::sqrt(13.0)) / 24.0;
  const auto phi1 = phi1_spectrum();
  const auto phi2 = phi2_spectrum(0.25, b2);
  CHECK(std::abs(concurrence_pure(phi1, 3) - concurrence_pure(phi2, 3)) < 1e-12);
  CHECK(concurrence_pure(phi1, 3) == doctest::Approx(std::sqrt(11.0 / 12.0)).epsilon(1e-14));
  CHECK(std::abs(concentratable_pure(phi1_state(), Bipartition({0}, 2)) - 11.0 / 36.0) < 1e-12);
  CHECK(std::abs(concentratable_pure(phi2_state(0.25, b2), Bipartition({0}, 2)) - 11.0 / 36.0) <
        1e-12);
  CHECK(concurrence_pure(SchmidtSpectrum({0.5, 0.5}), 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(concurrence_pure(phi1, 1), DomainError);
  CHECK_THROWS_AS(concurrence_pure(phi1, 2), DomainError);
}

TEST_CASE("ICEM is invariant under local unitaries") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = random_pure_state({3, 3}, seed);
    const std::vector<Matrix> us{random_unitary(3, rng), random_unitary(3, rng)};
    const auto rotated = apply_local(psi, us);
    const Bipartition cut({0}, 2);
    CHECK(icem_pure(schmidt_decompose(psi, cut)).value ==
          doctest::Approx(icem_pure(schmidt_decompose(rotated, cut)).value).epsilon(1e-10));
  }
}

TEST_CASE("bipartition enumeration") {
  const auto cuts = all_bipartitions(3);
  REQUIRE(cuts.size() == 6);
  CHECK(cuts[0].subset() == std::vector<int>{2});
  CHECK(cuts[3].subset() == std::vector<int>{0});
  CHECK(all_bipartitions(4).size() == 14);
  CHECK_THROWS_AS(all_bipartitions(1), DomainError);
}

TEST_CASE("multipartite fixtures") {
  CHECK(std::abs(icem_mean_arithmetic(ghz3()) - 0.25) < 1e-9);
  CHECK(std::abs(icem_mean_geometric(ghz3()) - 0.25) < 1e-9);
  CHECK(std::abs(icem_mean_arithmetic(w3()) - 2.0 / 9.0) < 1e-9);
  CHECK(std::abs(icem_mean_geometric(w3()) - 2.0 / 9.0) < 1e-9);
  CHECK(icem_mean_geometric(zero_bell()) == 0.0);
  CHECK(icem_mean_arithmetic(zero_bell()) == doctest::Approx(1.0 / 6.0));

  CHECK(classify_pure(ghz3()) == Verdict::GenuinelyEntangled);
  CHECK(classify_pure(w3()) == Verdict::GenuinelyEntangled);
  CHECK(classify_pure(zero_bell()) == Verdict::EntangledNotGenuine);
  const std::vector<int> zeros{0, 0, 0};
  CHECK(classify_pure(PureState::basis({2, 2, 2}, zeros)) == Verdict::FullySeparable);
  CHECK(to_string(Verdict::GenuinelyEntangled) == "genuinely-entangled");
}

TEST_CASE("geometric mean never exceeds the arithmetic mean") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto psi = random_pure_state({2, 3, 2}, seed);
    CHECK(icem_mean_geometric(psi) <= icem_mean_arithmetic(psi) + 1e-15);
  }
}
