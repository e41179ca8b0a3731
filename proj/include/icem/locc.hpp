#pragma once

#include <vector>

#include "icem/measures.hpp"
#include "icem/state.hpp"

namespace icem {

/// True when x is majorized by y (x ≺ y): every partial sum of the sorted
/// x is at most the matching partial sum of y, ties within 1e-12. By
/// Nielsen's theorem psi -> phi is possible under LOCC iff
/// is_majorized_by(lambda(psi), lambda(phi)).
bool is_majorized_by(const SchmidtSpectrum& x, const SchmidtSpectrum& y);

struct ComponentComparison {
  int index = 0;
  double lhs = 0.0;  // C_i(x)
  double rhs = 0.0;  // C_i(y)
  bool holds = false;
};

/// C_i(x) >= C_i(y) - 1e-12 for i = 1..r, where r + 1 is the larger of the
/// two ranks and both spectra are evaluated with that r.
std::vector<ComponentComparison> compare_components(const SchmidtSpectrum& x,
                                               const SchmidtSpectrum& y,
                                               Scheme scheme = Scheme::Binomial);

struct LoccVerdict {
  bool forward = false;   // x -> y
  bool backward = false;  // y -> x
  bool components_forward_ordered = false;
  bool components_backward_ordered = false;
  std::vector<ComponentComparison> components;  // x vs y
};

LoccVerdict locc_verdict(const SchmidtSpectrum& x, const SchmidtSpectrum& y,
                         Scheme scheme = Scheme::Binomial);

}  // namespace icem
