#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "icem/measures.hpp"
#include "icem/state.hpp"

namespace icem {

/// Pure-state decomposition {p_j, |psi_j>} of a density matrix.
struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> states;
};

/// sum_j p_j |psi_j><psi_j|.
Matrix reconstruct(const Ensemble& e);

/// sum_j p_j C(psi_j) across `cut`. Any valid decomposition of rho gives an
/// upper bound on the convex roof of rho.
double ensemble_average(const Ensemble& e, const Bipartition& cut,
                        const MeasureOptions& opts = {},
                        double rank_eps = kRankEps);

struct RoofConfig {
  int restarts = 32;
  double tolerance = 1e-7;
  int patience = 50;
  int max_iterations = 2000;
  /// Members per decomposition; defaults to min(rank^2, 16), never below rank.
  std::optional<int> ensemble_size;
  std::uint64_t seed = 0;
  MeasureOptions measure;
  double rank_eps = kRankEps;
};

/// Best decomposition found. `value` is an upper bound on the roof: local
/// search cannot certify the global minimum.
struct RoofResult {
  double value = 0.0;
  Ensemble best_ensemble;
  int restarts_used = 0;
  bool converged = false;
  int ensemble_size = 0;
};

/// Minimizes the ensemble average over decompositions of rho. Decompositions
/// are generated as |psi~_j> = sum_k U_jk sqrt(mu_k)|e_k> from the
/// eigenpairs (mu_k, e_k) of rho and an m x rank isometry U; each restart runs
/// Riemannian conjugate gradient over U from a seeded random isometry.
RoofResult roof_minimize(const DensityMatrix& rho, const Bipartition& cut,
                         const RoofConfig& cfg = {});

/// Objective and Riemannian gradient at a given isometry; exposed for
/// gradient checks.
struct RoofObjective {
  RoofObjective(const DensityMatrix& rho, const Bipartition& cut,
                MeasureOptions opts, double rank_eps);

  /// Sum of p_j C(psi_j) for the ensemble generated by `u`. If `euclidean_grad`
  /// is non-null it receives 2 d f / d conj(U).
  double evaluate(const Matrix& u, Matrix* euclidean_grad = nullptr) const;
  Ensemble ensemble(const Matrix& u) const;

  int rank() const { return static_cast<int>(weighted_.cols()); }

 private:
  BipartiteReshaper reshaper_;
  std::vector<int> dims_;
  Matrix weighted_;  // columns sqrt(mu_k) e_k
  MeasureOptions opts_;
  double rank_eps_;
};

}  // namespace icem
