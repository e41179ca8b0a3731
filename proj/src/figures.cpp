#include "icem/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace icem {

namespace {

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double icem_at(double t, const MeasureOptions& opts) {
  const auto b = ellipse_point(t);
  return icem_pure(phi2_spectrum(b[0], b[1]), opts).value;
}

}  // namespace

SchmidtSpectrum phi1_spectrum() {
  return SchmidtSpectrum({0.5, 1.0 / 3.0, 1.0 / 6.0});
}

SchmidtSpectrum phi2_spectrum(double beta1, double beta2) {
  return SchmidtSpectrum({beta1, beta2, std::max(0.0, 1.0 - beta1 - beta2)});
}

PureState phi2_state(double beta1, double beta2) {
  const double beta3 = std::max(0.0, 1.0 - beta1 - beta2);
  Vector amps = Vector::Zero(9);
  amps[0] = std::sqrt(beta1);
  amps[4] = std::sqrt(beta2);
  amps[8] = std::sqrt(beta3);
  return PureState::normalized({3, 3}, std::move(amps));
}

std::array<double, 3> ellipse_point(double t) {
  const double radius = 1.0 / std::sqrt(18.0);
  const double u = radius * std::cos(t) / std::sqrt(2.0);  // along (1,-1,0)
  const double v = radius * std::sin(t) / std::sqrt(6.0);  // along (1,1,-2)
  constexpr double third = 1.0 / 3.0;
  return {third + u + v, third - u + v, third - 2.0 * v};
}

std::vector<EllipseSample> figure1_points(std::size_t samples) {
  if (samples == 0) throw DomainError("sample count must be positive");
  std::vector<EllipseSample> pts;
  pts.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                     static_cast<double>(samples);
    const auto b = ellipse_point(t);
    pts.push_back({t, b[0], b[1]});
  }
  return pts;
}

Figure2Result figure2_sweep(std::size_t samples, Scheme scheme) {
  if (samples < 2) throw DomainError("need at least 2 samples");
  const MeasureOptions opts{scheme, std::nullopt};
  const double reference = icem_pure(phi1_spectrum(), opts).value;
  auto diff = [&](double t) { return icem_at(t, opts) - reference; };

  Figure2Result out;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(samples);
  std::vector<double> ts(samples + 1);
  std::vector<double> ds(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) {
    ts[i] = step * static_cast<double>(i);
    ds[i] = diff(ts[i]);
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i < samples; ++i) {
    if (std::abs(ds[i]) < kEqualityTol) {
      roots.push_back(ts[i]);
      continue;
    }
    if (std::abs(ds[i + 1]) >= kEqualityTol && (ds[i] < 0.0) != (ds[i + 1] < 0.0)) {
      double lo = ts[i];
      double hi = ts[i + 1];
      double flo = ds[i];
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = diff(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(std::abs(diff(lo)) <= std::abs(diff(hi)) ? lo : hi);
    }
  }

  for (std::size_t i = 0; i < samples; ++i) {
    out.rows.push_back({ts[i], ds[i] + reference, reference,
                        std::abs(ds[i]) < kEqualityTol});
  }
  for (double t : roots) {
    const bool on_grid = std::any_of(out.rows.begin(), out.rows.end(),
                                     [&](const Figure2Row& r) { return r.t == t; });
    if (!on_grid) out.rows.push_back({t, icem_at(t, opts), reference, true});
    out.equality_points.push_back({t, ellipse_point(t)});
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const Figure2Row& a, const Figure2Row& b) { return a.t < b.t; });
  return out;
}

void write_figure1_csv(std::ostream& out, const std::vector<EllipseSample>& pts) {
  out << "beta1,beta2\n";
  for (const auto& p : pts) out << fmt9(p.beta1) << ',' << fmt9(p.beta2) << '\n';
}

void write_figure2_csv(std::ostream& out, const Figure2Result& result) {
  out << "t,icem_phi2,icem_phi1,equal_flag\n";
  for (const auto& r : result.rows) {
    out << fmt9(r.t) << ',' << fmt9(r.icem_phi2) << ',' << fmt9(r.icem_phi1)
        << ',' << (r.equal ? 1 : 0) << '\n';
  }
}

}  // namespace icem
