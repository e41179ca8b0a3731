#include "icem/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "icem/parallel.hpp"

namespace icem {

namespace {

constexpr double kTinyWeight = 1e-15;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

double real_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

// Polar retraction onto the Stiefel manifold.
Matrix retract(const Matrix& y) {
  Eigen::JacobiSVD<Matrix> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Tangent-space projection at the isometry u.
Matrix project(const Matrix& u, const Matrix& z) {
  const Matrix uz = u.adjoint() * z;
  return z - u * (0.5 * (uz + uz.adjoint()));
}

int resolve_ensemble_size(const RoofConfig& cfg, int rank) {
  if (cfg.ensemble_size) {
    if (*cfg.ensemble_size < rank) {
      throw DomainError("ensemble size " + std::to_string(*cfg.ensemble_size) +
                        " is below rank(rho) = " + std::to_string(rank));
    }
    return *cfg.ensemble_size;
  }
  return std::max(rank, std::min(rank * rank, 16));
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  Matrix u;
  bool converged = false;
};

RestartOutcome run_restart(const RoofObjective& obj, int m,
                           const RoofConfig& cfg, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  Matrix u = random_unitary(m, rng).leftCols(obj.rank());

  Matrix egrad;
  double f = obj.evaluate(u, &egrad);
  Matrix grad = project(u, egrad);
  Matrix dir = -grad;
  double step = 0.5;
  std::vector<double> history{f};
  RestartOutcome out;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    const double gnorm2 = real_inner(grad, grad);
    if (gnorm2 < 1e-28) {
      out.converged = true;
      break;
    }
    double slope = real_inner(grad, dir);
    if (slope >= 0.0) {
      dir = -grad;
      slope = -gnorm2;
    }
    double t = std::min(step * 2.0, 1e3);
    Matrix u_next;
    double f_next = f;
    bool accepted = false;
    for (int b = 0; b < kMaxBacktracks; ++b) {
      u_next = retract(u + t * dir);
      f_next = obj.evaluate(u_next);
      if (f_next <= f + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      out.converged = true;  // no descent available at machine precision
      break;
    }
    step = t;
    Matrix egrad_next;
    f_next = obj.evaluate(u_next, &egrad_next);
    const Matrix grad_next = project(u_next, egrad_next);
    // Polak-Ribiere+ with transport by projection
    const Matrix grad_prev = project(u_next, grad);
    const double beta = std::max(
        0.0, real_inner(grad_next, grad_next - grad_prev) / gnorm2);
    dir = -grad_next + beta * project(u_next, dir);
    u = std::move(u_next);
    grad = grad_next;
    f = f_next;
    history.push_back(f);
    const auto n = history.size();
    if (n > static_cast<std::size_t>(cfg.patience) &&
        history[n - 1 - static_cast<std::size_t>(cfg.patience)] - f <
            cfg.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.value = f;
  out.u = std::move(u);
  return out;
}

}  // namespace

Matrix reconstruct(const Ensemble& e) {
  if (e.states.empty()) throw DomainError("ensemble is empty");
  if (e.weights.size() != e.states.size()) {
    throw DomainError("ensemble weight and state counts differ");
  }
  const auto d = static_cast<Eigen::Index>(e.states.front().dimension());
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < e.states.size(); ++j) {
    const Vector& v = e.states[j].amplitudes();
    if (v.size() != d) throw DomainError("ensemble states differ in dimension");
    rho += e.weights[j] * v * v.adjoint();
  }
  return rho;
}

double ensemble_average(const Ensemble& e, const Bipartition& cut,
                        const MeasureOptions& opts, double rank_eps) {
  if (e.weights.size() != e.states.size()) {
    throw DomainError("ensemble weight and state counts differ");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < e.states.size(); ++j) {
    total += e.weights[j] *
             icem_pure(schmidt_decompose(e.states[j], cut, rank_eps), opts).value;
  }
  return total;
}

// RoofObjective ---------------------------------------------------------------

RoofObjective::RoofObjective(const DensityMatrix& rho, const Bipartition& cut,
                             MeasureOptions opts, double rank_eps)
    : reshaper_(rho.dims(), cut), dims_(rho.dims()), opts_(opts),
      rank_eps_(rank_eps) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;) {
    if (es.eigenvalues()[k] > rank_eps) keep.push_back(k);
  }
  weighted_.resize(es.eigenvectors().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    weighted_.col(static_cast<Eigen::Index>(c)) =
        std::sqrt(es.eigenvalues()[keep[c]]) * es.eigenvectors().col(keep[c]);
  }
}

double RoofObjective::evaluate(const Matrix& u, Matrix* euclidean_grad) const {
  const Matrix psi = weighted_ * u.transpose();  // column j = |psi~_j>
  const bool want_grad = euclidean_grad != nullptr;
  Matrix g;
  if (want_grad) g = Matrix::Zero(psi.rows(), psi.cols());
  double total = 0.0;
  for (Eigen::Index j = 0; j < psi.cols(); ++j) {
    const Matrix m = reshaper_.reshape(psi.col(j));
    const Matrix sigma = m * m.adjoint();
    const double p = sigma.trace().real();
    if (p < 1e-300) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        sigma, want_grad ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    int rank = 0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      if (lam[k] / p > rank_eps_) ++rank;
    }
    const int r = opts_.force_r.value_or(std::max(rank, 1) - 1);
    const auto coeff = scheme_coefficients(opts_.scheme, r);
    const double scale = std::ldexp(1.0, -r);
    // g = p - 2^-r sum_i c_i T_{i+1} p^-i, with T_q = Tr sigma^q
    double weighted = p;
    double s = 0.0;
    Eigen::VectorXd h = Eigen::VectorXd::Zero(lam.size());
    Eigen::VectorXd lam_pow = lam;  // lam^i
    double p_pow = 1.0;              // p^-i
    for (int i = 1; i <= r; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      p_pow /= p;
      const double t_next = lam_pow.cwiseProduct(lam).sum();  // T_{i+1}
      weighted += coeff[iu] * t_next * p_pow;
      if (want_grad) {
        h += coeff[iu] * static_cast<double>(i + 1) * p_pow * lam_pow;
        s += coeff[iu] * static_cast<double>(i) * t_next * p_pow / p;
      }
      lam_pow = lam_pow.cwiseProduct(lam);
    }
    total += p - scale * weighted;
    if (want_grad) {
      const Matrix& w = es.eigenvectors();
      const Matrix sigma_m = w * h.asDiagonal() * (w.adjoint() * m);
      const Matrix gm = 2.0 * ((1.0 - scale) * m - scale * (sigma_m - s * m));
      g.col(j) = reshaper_.flatten(gm);
    }
  }
  if (want_grad) *euclidean_grad = g.transpose() * weighted_.conjugate();
  return total;
}

Ensemble RoofObjective::ensemble(const Matrix& u) const {
  const Matrix psi = weighted_ * u.transpose();
  Ensemble e;
  for (Eigen::Index j = 0; j < psi.cols(); ++j) {
    const double p = psi.col(j).squaredNorm();
    if (p < kTinyWeight) continue;
    e.weights.push_back(p);
    e.states.push_back(PureState::normalized(dims_, psi.col(j)));
  }
  return e;
}

// roof_minimize ---------------------------------------------------------------

RoofResult roof_minimize(const DensityMatrix& rho, const Bipartition& cut,
                         const RoofConfig& cfg) {
  if (cfg.restarts < 1) throw DomainError("need at least one restart");
  if (cfg.patience < 1) throw DomainError("patience must be positive");
  const RoofObjective obj(rho, cut, cfg.measure, cfg.rank_eps);
  const int m = resolve_ensemble_size(cfg, obj.rank());

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  parallel_for(outcomes.size(), [&](std::size_t i) {
    outcomes[i] = run_restart(obj, m, cfg, i);
  });
  // first minimum wins so the choice does not depend on scheduling
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].value < outcomes[best].value) best = i;
  }

  RoofResult res;
  res.best_ensemble = obj.ensemble(outcomes[best].u);
  res.value = ensemble_average(res.best_ensemble, cut, cfg.measure, cfg.rank_eps);
  res.restarts_used = cfg.restarts;
  res.converged = outcomes[best].converged;
  res.ensemble_size = m;
  return res;
}

}  // namespace icem
