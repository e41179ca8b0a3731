#include "icem/locc.hpp"

#include <algorithm>
#include <stdexcept>

namespace icem {

namespace {

constexpr double kTieTol = 1e-12;

std::vector<double> padded(const SchmidtSpectrum& s, std::size_t n) {
  std::vector<double> v = s.values();
  v.resize(n, 0.0);
  return v;
}

}  // namespace

bool is_majorized_by(const SchmidtSpectrum& x, const SchmidtSpectrum& y) {
  const std::size_t n = std::max(x.size(), y.size());
  const auto xv = padded(x, n);
  const auto yv = padded(y, n);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xv[k];
    sy += yv[k];
    if (sx > sy + kTieTol) return false;
  }
  return true;
}

std::vector<ComponentComparison> compare_components(const SchmidtSpectrum& x,
                                               const SchmidtSpectrum& y,
                                               Scheme scheme) {
  const int r = std::max(x.rank(), y.rank()) - 1;
  const MeasureOptions opts{scheme, r};
  const auto cx = icem_pure(x, opts).components;
  const auto cy = icem_pure(y, opts).components;
  std::vector<ComponentComparison> out;
  for (int i = 1; i <= r; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    out.push_back({i, cx[iu], cy[iu], cx[iu] >= cy[iu] - kTieTol});
  }
  return out;
}

LoccVerdict locc_verdict(const SchmidtSpectrum& x, const SchmidtSpectrum& y,
                         Scheme scheme) {
  LoccVerdict v;
  v.forward = is_majorized_by(x, y);
  v.backward = is_majorized_by(y, x);
  v.components = compare_components(x, y, scheme);
  v.components_forward_ordered =
      std::all_of(v.components.begin(), v.components.end(),
                  [](const ComponentComparison& c) { return c.holds; });
  const auto rev = compare_components(y, x, scheme);
  v.components_backward_ordered =
      std::all_of(rev.begin(), rev.end(),
                  [](const ComponentComparison& c) { return c.holds; });
  if ((v.forward && !v.components_forward_ordered) ||
      (v.backward && !v.components_backward_ordered)) {
    throw std::logic_error(
        "majorization holds but component monotones are not ordered");
  }
  return v;
}

}  // namespace icem
