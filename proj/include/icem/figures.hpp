#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "icem/measures.hpp"
#include "icem/state.hpp"

namespace icem {

/// The reference spectrum (1/2, 1/3, 1/6).
SchmidtSpectrum phi1_spectrum();
/// Spectrum (beta1, beta2, 1 - beta1 - beta2).
SchmidtSpectrum phi2_spectrum(double beta1, double beta2);
/// sqrt(1/2)|00> + sqrt(1/3)|11> + sqrt(1/6)|22> and its two-parameter family.
PureState phi2_state(double beta1, double beta2);
inline PureState phi1_state() { return phi2_state(0.5, 1.0 / 3.0); }

/// Point (beta1, beta2, beta3) on the purity-7/18 circle in the probability
/// simplex: centre (1/3, 1/3, 1/3), radius 1/sqrt(18), angle t. Its (beta1,
/// beta2) projection is the ellipse of equal concurrence with phi1.
std::array<double, 3> ellipse_point(double t);

struct EllipseSample {
  double t = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// `samples` points at t = 2 pi i / samples.
std::vector<EllipseSample> figure1_points(std::size_t samples);

struct Figure2Row {
  double t = 0.0;
  double icem_phi2 = 0.0;
  double icem_phi1 = 0.0;
  bool equal = false;
};

struct EqualityPoint {
  double t = 0.0;
  std::array<double, 3> beta{};
};

struct Figure2Result {
  /// Grid rows with refined equality rows merged in, sorted by t.
  std::vector<Figure2Row> rows;
  std::vector<EqualityPoint> equality_points;
};

inline constexpr double kEqualityTol = 1e-9;

/// Sweeps the ellipse, evaluating the ICEM of phi2(t) against phi1. Sign
/// changes of the difference between grid points are bisected down to
/// machine precision in t, so crossings are found regardless of grid density.
Figure2Result figure2_sweep(std::size_t samples, Scheme scheme = Scheme::Binomial);

void write_figure1_csv(std::ostream& out, const std::vector<EllipseSample>& pts);
void write_figure2_csv(std::ostream& out, const Figure2Result& result);

}  // namespace icem
