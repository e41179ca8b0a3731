#include "icem/char_poly.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace icem {

namespace {

constexpr double kMomentSlack = 1e-9;
constexpr double kImagTol = 1e-7;

// The recursion cancels heavily for small trailing coefficients, so the
// accumulation and the companion solve run in extended precision.
using Wide = long double;

Wide alternating(std::size_t l) { return (l % 2 == 0) ? 1.0L : -1.0L; }

}  // namespace

CharCoeffs coeffs_from_moments(const MomentVector& m) {
  if (m.moments.empty()) throw DomainError("moment vector is empty");
  const std::size_t d = m.size();
  CharCoeffs a;
  a.coeffs.resize(d);
  std::vector<Wide> wide(d + 1, 0.0L);
  wide[0] = 1.0L;
  for (std::size_t k = 0; k < d; ++k) {
    Wide acc = 0.0L;
    for (std::size_t l = 0; l <= k; ++l) {
      acc += alternating(l) * wide[k - l] * static_cast<Wide>(m(l + 1));
    }
    wide[k + 1] = acc / static_cast<Wide>(k + 1);
    a.coeffs[k] = static_cast<double>(wide[k + 1]);
  }
  return a;
}

MomentVector moments_from_coeffs(const CharCoeffs& a) {
  if (a.coeffs.empty()) throw DomainError("coefficient vector is empty");
  const std::size_t d = a.size();
  MomentVector m;
  m.moments.resize(d);
  // (k+1) a_{k+1} = (-1)^k m_{k+1} + sum_{l<k} (-1)^l a_{k-l} m_{l+1}
  std::vector<Wide> wide(d, 0.0L);
  for (std::size_t k = 0; k < d; ++k) {
    Wide rest = 0.0L;
    for (std::size_t l = 0; l < k; ++l) {
      rest += alternating(l) * static_cast<Wide>(a(k - l)) * wide[l];
    }
    wide[k] = alternating(k) * (static_cast<Wide>(k + 1) * static_cast<Wide>(a(k + 1)) - rest);
    const double mk = static_cast<double>(wide[k]);
    if (mk < -kMomentSlack || mk > 1.0 + kMomentSlack) {
      throw DomainError("coefficients are inconsistent with a state: Tr rho^" +
                        std::to_string(k + 1) + " = " + std::to_string(mk));
    }
    m.moments[k] = mk;
  }
  return m;
}

SchmidtSpectrum spectrum_from_coeffs(const CharCoeffs& a, double rank_eps) {
  if (a.coeffs.empty()) throw DomainError("coefficient vector is empty");
  const auto d = static_cast<Eigen::Index>(a.size());
  // Monic F(x) = x^d + c_{d-1} x^{d-1} + ... + c_0 with c_{d-k} = (-1)^k a_k.
  // Companion matrix: ones on the subdiagonal, last column -c_0..-c_{d-1}.
  using WideMatrix = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;
  WideMatrix companion = WideMatrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto k = static_cast<std::size_t>(d - j);
    const Wide c = alternating(k) * static_cast<Wide>(a(k));
    companion(j, d - 1) = -c;
  }
  Eigen::EigenSolver<WideMatrix> es(companion, false);
  if (es.info() != Eigen::Success) {
    throw DomainError("companion eigenvalue iteration did not converge");
  }
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(static_cast<double>(z.imag())) > kImagTol) {
      throw DomainError("characteristic polynomial has a complex root (imag " +
                        std::to_string(static_cast<double>(z.imag())) + ")");
    }
    roots.push_back(static_cast<double>(z.real()));
  }
  return SchmidtSpectrum(std::move(roots), rank_eps);
}

}  // namespace icem
