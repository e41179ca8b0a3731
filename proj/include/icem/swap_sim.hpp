#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "icem/measures.hpp"
#include "icem/state.hpp"

namespace icem {

inline constexpr std::size_t kDefaultSwapAmplitudeCap = std::size_t{1} << 22;

struct SwapSimConfig {
  std::size_t max_amplitudes = kDefaultSwapAmplitudeCap;
  /// Apply the controlled swaps k = r..1 instead of 1..r. The output
  /// distribution does not depend on this.
  bool reverse_order = false;
};

/// Exact distribution over ancilla bitstrings. probabilities[z] is p(z) where
/// ancilla 1 is the most significant bit of z; probabilities[0] = p(0...0).
struct SwapTestOutcome {
  int r = 0;
  std::vector<double> probabilities;

  double p_zero() const { return probabilities.front(); }
};

/// Statevector run of the chained SWAP test: r + 1 copies of psi and r
/// ancillas. Each ancilla gets H, then ancilla k controls a swap of the
/// `cut.subset()` parts of copies k and k+1, then H again. Throws
/// ResourceError when 2^r * D^(r+1) exceeds the cap.
SwapTestOutcome simulate_swap_test(const PureState& psi, const Bipartition& cut,
                                   int r, const SwapSimConfig& cfg = {});

/// p(0...0) = 4^-r * sum over pairs (x, y) of swap patterns of
/// <psi^(r+1)| S_x^-1 S_y |psi^(r+1)>, each term a product of Tr rho^k over
/// the cycles of S_x^-1 S_y. Needs moments up to order r + 1; r <= 12.
/// For r <= 2 this is the binomial ICEM complement; at r = 3 it is
/// (1 + 3 m2 + 5/2 m3 + m4 + 1/2 m2^2) / 8.
double p_zero_closed_form(const MomentVector& m, int r);

struct ShotEstimate {
  std::size_t shots = 0;
  std::vector<std::size_t> counts;
  double p_zero = 0.0;
  double std_error = 0.0;
};

/// Draws `shots` ancilla bitstrings from the exact distribution.
ShotEstimate sample_shots(const SwapTestOutcome& outcome, std::size_t shots,
                          std::uint64_t seed);

struct SwapCheckReport {
  int r = 0;
  double simulated = 0.0;     // 1 - p(0) from the statevector run
  double closed_form = 0.0;   // 1 - p(0) from the cycle expansion
  double icem_binomial = 0.0;
  double icem_permutation = 0.0;
  double diff_sim_closed = 0.0;
  double diff_sim_binomial = 0.0;
  double diff_sim_permutation = 0.0;
  double diff_closed_binomial = 0.0;
  /// (1 - p0 closed form) - ICEM(binomial); the part of the cycle expansion
  /// that the weighted moment sum does not reproduce. Zero for r <= 2 and
  /// (m3 - m2^2) / 16 at r = 3.
  double predicted_gap = 0.0;
  std::optional<ShotEstimate> shots;
};

struct SwapCheckOptions {
  std::optional<int> force_r;
  std::optional<std::size_t> shots;
  std::uint64_t seed = 0;
  double rank_eps = kRankEps;
  SwapSimConfig sim;
};

SwapCheckReport check_swap_test(const PureState& psi, const Bipartition& cut,
                                const SwapCheckOptions& opts = {});

}  // namespace icem
