#include "icem/swap_sim.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace icem {

namespace {

std::size_t checked_register_size(std::size_t d, int r, std::size_t cap) {
  std::size_t total = std::size_t{1} << r;
  for (int k = 0; k <= r; ++k) {
    if (total > cap / d) {
      throw ResourceError("SWAP-test register exceeds the cap of " +
                          std::to_string(cap) + " amplitudes");
    }
    total *= d;
  }
  if (total > cap) {
    throw ResourceError("SWAP-test register exceeds the cap of " +
                        std::to_string(cap) + " amplitudes");
  }
  return total;
}

}  // namespace

SwapTestOutcome simulate_swap_test(const PureState& psi, const Bipartition& cut,
                                   int r, const SwapSimConfig& cfg) {
  if (r < 1) throw DomainError("SWAP test needs r >= 1");
  if (r > 20) throw ResourceError("too many ancillas");
  const Matrix m = bipartite_matrix(psi, cut);
  const auto da = static_cast<std::size_t>(m.rows());
  const auto db = static_cast<std::size_t>(m.cols());
  const std::size_t d = da * db;
  const std::size_t total = checked_register_size(d, r, cfg.max_amplitudes);
  const std::size_t copies_dim = total >> r;

  // copy j (0-based) occupies digit j of a base-d number, copy 0 most
  // significant; within a copy the A index is the high part (stride db)
  std::vector<std::size_t> copy_stride(static_cast<std::size_t>(r) + 1);
  copy_stride[static_cast<std::size_t>(r)] = 1;
  for (int j = r; j-- > 0;) {
    copy_stride[static_cast<std::size_t>(j)] =
        copy_stride[static_cast<std::size_t>(j) + 1] * d;
  }

  // |0>^r (x) psi^(r+1); ancilla bits sit above the copy register
  std::vector<Complex> amp(total, Complex(0.0));
  for (std::size_t c = 0; c < copies_dim; ++c) {
    Complex a = 1.0;
    for (int j = 0; j <= r; ++j) {
      const std::size_t digit = (c / copy_stride[static_cast<std::size_t>(j)]) % d;
      a *= m(static_cast<Eigen::Index>(digit / db),
             static_cast<Eigen::Index>(digit % db));
    }
    amp[c] = a;
  }

  // ancilla k (1-based) is bit r-k of the ancilla index i / copies_dim
  auto ancilla_set = [&](std::size_t i, int k) {
    return ((i / copies_dim) >> (r - k)) & 1u;
  };
  auto ancilla_offset = [&](int k) {
    return (std::size_t{1} << (r - k)) * copies_dim;
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto hadamard = [&](int k) {
    const std::size_t off = ancilla_offset(k);
    for (std::size_t i = 0; i < total; ++i) {
      if (ancilla_set(i, k)) continue;
      const Complex x0 = amp[i];
      const Complex x1 = amp[i + off];
      amp[i] = (x0 + x1) * inv_sqrt2;
      amp[i + off] = (x0 - x1) * inv_sqrt2;
    }
  };
  auto controlled_swap = [&](int k) {
    const std::size_t s1 = copy_stride[static_cast<std::size_t>(k) - 1] * db;
    const std::size_t s2 = copy_stride[static_cast<std::size_t>(k)] * db;
    for (std::size_t i = 0; i < total; ++i) {
      if (!ancilla_set(i, k)) continue;
      const std::size_t c = i % copies_dim;
      const std::size_t a1 = (c / s1) % da;
      const std::size_t a2 = (c / s2) % da;
      if (a1 >= a2) continue;
      const std::size_t j = i - a1 * s1 - a2 * s2 + a2 * s1 + a1 * s2;
      std::swap(amp[i], amp[j]);
    }
  };

  for (int k = 1; k <= r; ++k) hadamard(k);
  if (cfg.reverse_order) {
    for (int k = r; k >= 1; --k) controlled_swap(k);
  } else {
    for (int k = 1; k <= r; ++k) controlled_swap(k);
  }
  for (int k = 1; k <= r; ++k) hadamard(k);

  SwapTestOutcome out;
  out.r = r;
  out.probabilities.assign(std::size_t{1} << r, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    out.probabilities[i / copies_dim] += std::norm(amp[i]);
  }
  return out;
}

namespace {

// Permutation of the r + 1 copies applied by the swaps selected in `mask`
// (bit k-1 set means ancilla k fired), composed in circuit order k = 1..r.
std::vector<int> swap_permutation(unsigned long mask, int r) {
  std::vector<int> p(static_cast<std::size_t>(r) + 1);
  std::iota(p.begin(), p.end(), 0);
  for (int k = 0; k < r; ++k) {
    if ((mask >> k) & 1ul) {
      for (int& v : p) {
        if (v == k) {
          v = k + 1;
        } else if (v == k + 1) {
          v = k;
        }
      }
    }
  }
  return p;
}

}  // namespace

double p_zero_closed_form(const MomentVector& m, int r) {
  if (r < 0) throw DomainError("r must be >= 0");
  if (m.size() < static_cast<std::size_t>(r) + 1) {
    throw DomainError("closed form needs moments up to order r + 1");
  }
  if (r > 12) throw ResourceError("too many ancillas to enumerate swap pairs");
  const auto n = static_cast<std::size_t>(r) + 1;
  const unsigned long count = 1ul << r;
  std::vector<std::vector<int>> perms;
  std::vector<std::vector<int>> inverses;
  for (unsigned long mask = 0; mask < count; ++mask) {
    perms.push_back(swap_permutation(mask, r));
    std::vector<int> inv(n);
    for (std::size_t i = 0; i < n; ++i) {
      inv[static_cast<std::size_t>(perms.back()[i])] = static_cast<int>(i);
    }
    inverses.push_back(std::move(inv));
  }

  double sum = 0.0;
  std::vector<char> seen(n);
  for (unsigned long x = 0; x < count; ++x) {
    for (unsigned long y = 0; y < count; ++y) {
      // <psi^(r+1)| S_x^-1 S_y |psi^(r+1)> is the product over the cycles
      // of S_x^-1 S_y of Tr rho^(cycle length)
      std::fill(seen.begin(), seen.end(), 0);
      double term = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j];
             j = static_cast<std::size_t>(inverses[x][static_cast<std::size_t>(perms[y][j])])) {
          seen[j] = 1;
          ++len;
        }
        if (len > 1) term *= m(len);
      }
      sum += term;
    }
  }
  return std::ldexp(sum, -2 * r);
}

ShotEstimate sample_shots(const SwapTestOutcome& outcome, std::size_t shots,
                          std::uint64_t seed) {
  if (shots == 0) throw DomainError("shot count must be positive");
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(outcome.probabilities.begin(),
                                               outcome.probabilities.end());
  ShotEstimate est;
  est.shots = shots;
  est.counts.assign(outcome.probabilities.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) ++est.counts[dist(rng)];
  const double n = static_cast<double>(shots);
  est.p_zero = static_cast<double>(est.counts[0]) / n;
  est.std_error = std::sqrt(est.p_zero * (1.0 - est.p_zero) / n);
  return est;
}

SwapCheckReport check_swap_test(const PureState& psi, const Bipartition& cut,
                                const SwapCheckOptions& opts) {
  const SchmidtSpectrum spec = schmidt_decompose(psi, cut, opts.rank_eps);
  const int natural_r = spec.rank() - 1;
  const int r = opts.force_r.value_or(std::max(1, natural_r));
  if (r < 1) throw DomainError("SWAP test needs r >= 1");

  SwapCheckReport rep;
  rep.r = r;
  const SwapTestOutcome sim = simulate_swap_test(psi, cut, r, opts.sim);
  rep.simulated = 1.0 - sim.p_zero();
  rep.closed_form = 1.0 - p_zero_closed_form(trace_powers(spec, r + 1), r);

  MeasureOptions mo;
  mo.force_r = opts.force_r.value_or(natural_r);
  mo.scheme = Scheme::Binomial;
  rep.icem_binomial = icem_pure(spec, mo).value;
  mo.scheme = Scheme::Permutation;
  rep.icem_permutation = icem_pure(spec, mo).value;

  rep.diff_sim_closed = std::abs(rep.simulated - rep.closed_form);
  rep.diff_sim_binomial = std::abs(rep.simulated - rep.icem_binomial);
  rep.diff_sim_permutation = std::abs(rep.simulated - rep.icem_permutation);
  rep.diff_closed_binomial = std::abs(rep.closed_form - rep.icem_binomial);
  rep.predicted_gap = rep.closed_form - rep.icem_binomial;
  if (opts.shots) rep.shots = sample_shots(sim, *opts.shots, opts.seed);
  return rep;
}

}  // namespace icem
