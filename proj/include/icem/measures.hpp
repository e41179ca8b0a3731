#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icem/state.hpp"

namespace icem {

/// Weights applied to Tr rho^{i+1} in the pure-state ICEM.
///   Binomial: r! / (i! (r-i)!)    -- reproduces every worked example.
///   Permutation: r! / (r-i)!      -- the falling-factorial form as written.
/// The two agree for r <= 1.
enum class Scheme { Binomial, Permutation };

std::string_view to_string(Scheme s);
/// Accepts "binomial" and "printed" (alias "permutation").
Scheme parse_scheme(std::string_view name);

/// coeff(r, i) for i = 0..r.
std::vector<double> scheme_coefficients(Scheme s, int r);

inline constexpr double kMeasureEps = 1e-9;

struct MeasureOptions {
  Scheme scheme = Scheme::Binomial;
  /// Pins r instead of deriving it from the numerical Schmidt rank.
  std::optional<int> force_r;
};

struct MeasureReport {
  double value = 0.0;
  Scheme scheme = Scheme::Binomial;
  int rank_used = 1;  // r + 1
  /// C_i for i = 0..r. Sums to `value` under the binomial scheme only.
  std::vector<double> components;
};

/// sqrt(d/(d-1) * (1 - Tr rho_A^2)).
double concurrence_pure(const SchmidtSpectrum& spec, int d);

/// C = 1 - 2^{-r} sum_{i=0}^{r} coeff(r,i) Tr rho_A^{i+1}, r + 1 = Schmidt rank.
MeasureReport icem_pure(const SchmidtSpectrum& spec,
                        const MeasureOptions& opts = {});

/// C_i = coeff(r,i) / 2^r * (1 - Tr rho_A^{i+1}).
double icem_component(const SchmidtSpectrum& spec, int i,
                      const MeasureOptions& opts = {});

/// Bipartite concentratable entanglement 1 - 1/4 (1 + Tr rho_A^2 + Tr rho_B^2 + 1).
double concentratable_pure(const PureState& psi, const Bipartition& cut);

/// Every nonempty proper subset of {0..n-1}, ordered by bitmask.
std::vector<Bipartition> all_bipartitions(int n);

/// ICEM of psi across each cut returned by all_bipartitions, in that order.
std::vector<double> icem_over_bipartitions(const PureState& psi,
                                           const MeasureOptions& opts = {},
                                           double rank_eps = kRankEps);

double icem_mean_arithmetic(const PureState& psi,
                            const MeasureOptions& opts = {},
                            double rank_eps = kRankEps);
double icem_mean_geometric(const PureState& psi,
                           const MeasureOptions& opts = {},
                           double rank_eps = kRankEps);

enum class Verdict { FullySeparable, EntangledNotGenuine, GenuinelyEntangled };

std::string_view to_string(Verdict v);

Verdict classify_pure(const PureState& psi, const MeasureOptions& opts = {},
                      double rank_eps = kRankEps);

}  // namespace icem
