#pragma once

#include <vector>

#include "icem/state.hpp"

namespace icem {

/// Coefficients a_1..a_d of F(x) = x^d - a_1 x^{d-1} + a_2 x^{d-2} - ... ,
/// i.e. the elementary symmetric polynomials of the spectrum. a_0 = 1 is
/// implicit and not stored.
struct CharCoeffs {
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
  /// a_k, 1-based; a(0) returns 1.
  double operator()(std::size_t k) const {
    return k == 0 ? 1.0 : coeffs.at(k - 1);
  }
};

/// Newton's identities, power sums -> elementary symmetric polynomials:
///   a_{k+1} = 1/(k+1) * sum_{l=0}^{k} (-1)^l a_{k-l} m_{l+1}.
CharCoeffs coeffs_from_moments(const MomentVector& m);

/// Inverse recursion, solved for m_{k+1}. Throws DomainError if any
/// reconstructed moment leaves [-1e-9, 1 + 1e-9].
MomentVector moments_from_coeffs(const CharCoeffs& a);

/// Roots of F via eigenvalues of its companion matrix. Throws DomainError
/// when a root has imaginary part above 1e-7.
SchmidtSpectrum spectrum_from_coeffs(const CharCoeffs& a,
                                     double rank_eps = kRankEps);

}  // namespace icem
