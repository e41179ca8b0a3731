#include "icem/measures.hpp"

#include <cmath>
#include <string>

namespace icem {

std::string_view to_string(Scheme s) {
  return s == Scheme::Binomial ? "binomial" : "printed";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "binomial") return Scheme::Binomial;
  if (name == "printed" || name == "permutation") return Scheme::Permutation;
  throw DomainError("unknown coefficient scheme '" + std::string(name) + "'");
}

std::vector<double> scheme_coefficients(Scheme s, int r) {
  if (r < 0) throw DomainError("r must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(r) + 1);
  // falling factorial r!/(r-i)! = r (r-1) ... (r-i+1)
  double falling = 1.0;
  double factorial_i = 1.0;
  for (int i = 0; i <= r; ++i) {
    if (i > 0) {
      falling *= static_cast<double>(r - i + 1);
      factorial_i *= static_cast<double>(i);
    }
    c[static_cast<std::size_t>(i)] =
        s == Scheme::Binomial ? falling / factorial_i : falling;
  }
  return c;
}

double concurrence_pure(const SchmidtSpectrum& spec, int d) {
  if (d < 2) throw DomainError("concurrence needs d >= 2");
  if (spec.size() > static_cast<std::size_t>(d)) {
    // trailing zeros beyond d are harmless
    for (std::size_t i = static_cast<std::size_t>(d); i < spec.size(); ++i) {
      if (spec.values()[i] > kRankEps) {
        throw DomainError("spectrum has more nonzero entries than d");
      }
    }
  }
  const double m2 = trace_powers(spec, 2)(2);
  const double dd = static_cast<double>(d);
  return std::sqrt(std::max(0.0, dd / (dd - 1.0) * (1.0 - m2)));
}

namespace {

int resolve_r(const SchmidtSpectrum& spec, const MeasureOptions& opts) {
  if (opts.force_r) {
    if (*opts.force_r < 0) throw DomainError("forced r must be >= 0");
    return *opts.force_r;
  }
  return spec.rank() - 1;
}

}  // namespace

MeasureReport icem_pure(const SchmidtSpectrum& spec, const MeasureOptions& opts) {
  const int r = resolve_r(spec, opts);
  const auto coeff = scheme_coefficients(opts.scheme, r);
  MomentVector m = trace_powers(spec, r + 1);
  m.moments[0] = 1.0;

  MeasureReport rep;
  rep.scheme = opts.scheme;
  rep.rank_used = r + 1;
  rep.components.assign(static_cast<std::size_t>(r) + 1, 0.0);
  const double scale = std::ldexp(1.0, -r);
  double weighted = 0.0;
  for (int i = 0; i <= r; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    weighted += coeff[iu] * m(iu + 1);
    if (i > 0) rep.components[iu] = coeff[iu] * scale * (1.0 - m(iu + 1));
  }
  rep.value = 1.0 - scale * weighted;
  return rep;
}

double icem_component(const SchmidtSpectrum& spec, int i,
                      const MeasureOptions& opts) {
  const int r = resolve_r(spec, opts);
  if (i < 0 || i > r) {
    throw DomainError("component index " + std::to_string(i) +
                      " outside 0.." + std::to_string(r));
  }
  return icem_pure(spec, opts).components[static_cast<std::size_t>(i)];
}

double concentratable_pure(const PureState& psi, const Bipartition& cut) {
  const double purity_a = trace_powers(schmidt_decompose(psi, cut), 2)(2);
  const double purity_b =
      trace_powers(schmidt_decompose(psi, cut.swapped()), 2)(2);
  // subsets of {A, B}: empty set and the whole pure state both have purity 1
  return 1.0 - 0.25 * (1.0 + purity_a + purity_b + 1.0);
}

std::vector<Bipartition> all_bipartitions(int n) {
  if (n < 2) throw DomainError("need at least 2 subsystems");
  if (n > 30) throw ResourceError("too many subsystems to enumerate cuts");
  std::vector<Bipartition> cuts;
  const unsigned full = (1u << n) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      // subsystem 0 is the most significant bit so masks read left to right
      if (mask & (1u << (n - 1 - i))) subset.push_back(i);
    }
    cuts.emplace_back(std::move(subset), n);
  }
  return cuts;
}

std::vector<double> icem_over_bipartitions(const PureState& psi,
                                           const MeasureOptions& opts,
                                           double rank_eps) {
  std::vector<double> values;
  for (const auto& cut : all_bipartitions(psi.num_subsystems())) {
    values.push_back(icem_pure(schmidt_decompose(psi, cut, rank_eps), opts).value);
  }
  return values;
}

double icem_mean_arithmetic(const PureState& psi, const MeasureOptions& opts,
                            double rank_eps) {
  const auto values = icem_over_bipartitions(psi, opts, rank_eps);
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double icem_mean_geometric(const PureState& psi, const MeasureOptions& opts,
                           double rank_eps) {
  const auto values = icem_over_bipartitions(psi, opts, rank_eps);
  double log_sum = 0.0;
  for (double v : values) {
    if (v <= 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::FullySeparable:
      return "fully-separable";
    case Verdict::EntangledNotGenuine:
      return "entangled-not-genuine";
    case Verdict::GenuinelyEntangled:
      return "genuinely-entangled";
  }
  return "unknown";
}

Verdict classify_pure(const PureState& psi, const MeasureOptions& opts,
                      double rank_eps) {
  if (icem_mean_arithmetic(psi, opts, rank_eps) < kMeasureEps) {
    return Verdict::FullySeparable;
  }
  if (icem_mean_geometric(psi, opts, rank_eps) >= kMeasureEps) {
    return Verdict::GenuinelyEntangled;
  }
  return Verdict::EntangledNotGenuine;
}

}  // namespace icem
