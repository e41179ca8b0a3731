#include <cmath>
#include <random>

#include "doctest.h"
#include "icem/convex_roof.hpp"
#include "icem/figures.hpp"
#include "oracles.hpp"

using namespace icem;

namespace {

const Bipartition kAB({0}, 2);

Matrix random_rank2_qubits(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix gm(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) gm(i, j) = Complex(g(rng), g(rng));
  Matrix rho = gm * gm.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Matrix werner(double v) {
  Vector singlet = Vector::Zero(4);
  singlet[1] = 1.0 / std::sqrt(2.0);
  singlet[2] = -1.0 / std::sqrt(2.0);
  return v * singlet * singlet.adjoint() + (1.0 - v) * Matrix::Identity(4, 4) / 4.0;
}

Matrix random_isometry(int m, int r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix z(m, r);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < r; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  return qr.householderQ() * Matrix::Identity(m, r);
}

RoofConfig quick() {
  RoofConfig cfg;
  cfg.restarts = 8;
  return cfg;
}

}  // namespace

TEST_CASE("analytic gradient matches finite differences") {
  std::mt19937_64 rng(31);
  for (Scheme s : {Scheme::Binomial, Scheme::Permutation}) {
    const auto psi_rho = random_pure_state({3, 3, 2}, 3);
    // rank-2 mixed state on 3 x 3 from tracing out the last qubit
    const std::vector<int> keep{0, 1};
    const auto rho = partial_trace(psi_rho, keep);
    const RoofObjective obj(rho, kAB, MeasureOptions{s, std::nullopt}, kRankEps);
    REQUIRE(obj.rank() == 2);
    const Matrix u = random_isometry(4, obj.rank(), rng);
    Matrix grad;
    obj.evaluate(u, &grad);
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix dir = random_isometry(4, obj.rank(), rng);
      const double h = 1e-6;
      const double fd = (obj.evaluate(u + h * dir) - obj.evaluate(u - h * dir)) / (2.0 * h);
      const double an = (dir.conjugate().cwiseProduct(grad)).sum().real();
      CHECK(fd == doctest::Approx(an).epsilon(1e-6));
    }
  }
}

TEST_CASE("pure input recovers the pure-state value") {
  const auto psi = phi1_state();
  const auto rho = DensityMatrix::from_pure(psi);
  const auto res = roof_minimize(rho, kAB, quick());
  CHECK(std::abs(res.value - icem_pure(phi1_spectrum()).value) < 1e-6);
  CHECK(res.ensemble_size == 1);
}

TEST_CASE("separable states reach zero") {
  // a mixture of two product states
  const std::vector<int> d00{0, 0};
  const std::vector<int> d11{1, 1};
  const Matrix mix = 0.3 * DensityMatrix::from_pure(PureState::basis({2, 2}, d00)).matrix() +
                     0.7 * DensityMatrix::from_pure(PureState::basis({2, 2}, d11)).matrix();
  CHECK(roof_minimize(DensityMatrix({2, 2}, mix), kAB, quick()).value <= 1e-6);

  const Matrix w = werner(0.2);
  REQUIRE(oracle::ppt_min_eigenvalue(w) >= 0.0);
  CHECK(oracle::wootters_concurrence(w) == 0.0);
  CHECK(roof_minimize(DensityMatrix({2, 2}, w), kAB).value <= 1e-6);

  CHECK(roof_minimize(DensityMatrix({2, 2}, Matrix::Identity(4, 4) / 4.0), kAB, quick()).value <=
        1e-6);
}

TEST_CASE("two-qubit roof matches Wootters") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 10; ++n) {
    const Matrix rho = random_rank2_qubits(rng);
    const double cw = oracle::wootters_concurrence(rho);
    const auto res = roof_minimize(DensityMatrix({2, 2}, rho), kAB);
    CHECK(std::abs(4.0 * res.value - cw * cw) < 1e-4);
  }
}

TEST_CASE("entangled Werner state") {
  const double v = 0.8;
  const double cw = oracle::wootters_concurrence(werner(v));
  CHECK(cw == doctest::Approx((3.0 * v - 1.0) / 2.0));
  const auto res = roof_minimize(DensityMatrix({2, 2}, werner(v)), kAB);
  CHECK(std::abs(4.0 * res.value - cw * cw) < 1e-4);
}

TEST_CASE("best ensemble reconstructs rho and is deterministic") {
  const auto psi = random_pure_state({2, 3, 2}, 17);
  const std::vector<int> keep{0, 1};
  const auto rho = partial_trace(psi, keep);
  auto cfg = quick();
  cfg.seed = 5;
  const auto a = roof_minimize(rho, kAB, cfg);
  const auto b = roof_minimize(rho, kAB, cfg);
  CHECK(a.value == b.value);
  CHECK((reconstruct(a.best_ensemble) - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  double wsum = 0.0;
  for (double w : a.best_ensemble.weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("roof is an upper bound below any single decomposition") {
  const auto psi = random_pure_state({3, 3, 2}, 21);
  const std::vector<int> keep{0, 1};
  const auto rho = partial_trace(psi, keep);
  // the eigen-decomposition is one valid ensemble
  Ensemble eig;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  for (int k = 0; k < 9; ++k) {
    const double mu = es.eigenvalues()[k];
    if (mu < 1e-12) continue;
    eig.weights.push_back(mu);
    eig.states.emplace_back(std::vector<int>{3, 3}, Vector(es.eigenvectors().col(k)));
  }
  const double upper = ensemble_average(eig, kAB);
  const auto res = roof_minimize(rho, kAB, quick());
  CHECK(res.value <= upper + 1e-9);
}

TEST_CASE("larger ensembles never do worse") {
  const auto psi = random_pure_state({2, 2, 3}, 5);
  const std::vector<int> keep{0, 1};
  const auto rho = partial_trace(psi, keep);
  auto cfg = quick();
  cfg.ensemble_size = 3;
  const double small = roof_minimize(rho, kAB, cfg).value;
  cfg.ensemble_size = 8;
  const double large = roof_minimize(rho, kAB, cfg).value;
  CHECK(large <= small + 1e-6);
}

TEST_CASE("configuration errors") {
  const auto rho = DensityMatrix({2, 2}, werner(0.5));
  RoofConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(roof_minimize(rho, kAB, cfg), DomainError);
  cfg = RoofConfig{};
  cfg.ensemble_size = 2;
  CHECK_THROWS_AS(roof_minimize(rho, kAB, cfg), DomainError);
}
