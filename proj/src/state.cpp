#include "icem/state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace icem {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kSpectrumSumTol = 1e-9;
constexpr double kRenormDrift = 1e-12;

std::vector<std::size_t> strides_of(std::span<const int> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * static_cast<std::size_t>(dims[i]);
  }
  return strides;
}

// Splits every full index into (index over `first` positions, index over
// the remaining positions), both mixed-radix in ascending position order.
struct IndexSplit {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  std::size_t first_dim = 1;
  std::size_t second_dim = 1;
};

IndexSplit split_indices(std::span<const int> dims,
                         const std::vector<bool>& in_first) {
  const std::size_t total = total_dimension(dims);
  const auto strides = strides_of(dims);
  IndexSplit out;
  out.first.resize(total);
  out.second.resize(total);
  for (std::size_t p = 0; p < dims.size(); ++p) {
    (in_first[p] ? out.first_dim : out.second_dim) *=
        static_cast<std::size_t>(dims[p]);
  }
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) {
      const auto digit = (f / strides[p]) % static_cast<std::size_t>(dims[p]);
      if (in_first[p]) {
        a = a * static_cast<std::size_t>(dims[p]) + digit;
      } else {
        b = b * static_cast<std::size_t>(dims[p]) + digit;
      }
    }
    out.first[f] = a;
    out.second[f] = b;
  }
  return out;
}

std::vector<int> sorted_unique(std::span<const int> xs) {
  std::vector<int> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw DomainError("duplicate subsystem label in subset");
  }
  return v;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

std::size_t total_dimension(std::span<const int> dims) {
  if (dims.empty()) throw DomainError("dimension list is empty");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 2) throw DomainError("subsystem dimension must be >= 2");
    total *= static_cast<std::size_t>(d);
  }
  return total;
}

// PureState ------------------------------------------------------------------

PureState::PureState(std::vector<int> dims, Vector amplitudes,
                     const NumericConfig& cfg)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  const auto total = total_dimension(dims_);
  if (total > cfg.max_amplitudes) {
    throw ResourceError("state dimension " + std::to_string(total) +
                        " exceeds cap " + std::to_string(cfg.max_amplitudes));
  }
  if (static_cast<std::size_t>(amplitudes_.size()) != total) {
    throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match product of dims " +
                      std::to_string(total));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw DomainError("state is not normalized (squared norm " +
                      std::to_string(norm2) + ")");
  }
}

PureState PureState::normalized(std::vector<int> dims, Vector amplitudes,
                                const NumericConfig& cfg) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw DomainError("zero vector cannot be normalized");
  amplitudes /= n;
  return PureState(std::move(dims), std::move(amplitudes), cfg);
}

PureState PureState::basis(std::vector<int> dims, std::span<const int> digits) {
  if (digits.size() != dims.size()) {
    throw DomainError("basis digits do not match subsystem count");
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims[i]) {
      throw DomainError("basis digit out of range");
    }
    idx = idx * static_cast<std::size_t>(dims[i]) +
          static_cast<std::size_t>(digits[i]);
  }
  amps[static_cast<Eigen::Index>(idx)] = 1.0;
  return PureState(std::move(dims), std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const auto na = a.amplitudes().size();
  const auto nb = b.amplitudes().size();
  Vector amps(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  }
  return PureState::normalized(std::move(dims), std::move(amps));
}

// DensityMatrix --------------------------------------------------------------

DensityMatrix::DensityMatrix(std::vector<int> labels, std::vector<int> dims,
                             Matrix matrix)
    : labels_(std::move(labels)), dims_(std::move(dims)),
      matrix_(std::move(matrix)) {
  if (labels_.size() != dims_.size()) {
    throw DomainError("label count does not match dimension count");
  }
  sorted_unique(labels_);
  const auto total = total_dimension(dims_);
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != total) {
    throw DomainError("density matrix shape does not match dims");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTol) {
    throw DomainError("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(matrix_),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(std::vector<int> dims, Matrix matrix)
    : DensityMatrix(
          [&] {
            std::vector<int> l(dims.size());
            std::iota(l.begin(), l.end(), 0);
            return l;
          }(),
          dims, std::move(matrix)) {}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(psi.dims(), v * v.adjoint());
}

// SchmidtSpectrum ------------------------------------------------------------

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> values, double rank_eps)
    : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("spectrum is empty");
  double sum = 0.0;
  for (double& v : values_) {
    if (!std::isfinite(v)) throw DomainError("spectrum value is not finite");
    if (v < -kSpectrumSumTol) {
      throw DomainError("spectrum value is negative");
    }
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSpectrumSumTol) {
    throw DomainError("spectrum does not sum to 1 (sum " + std::to_string(sum) +
                      ")");
  }
  if (std::abs(sum - 1.0) > kRenormDrift) {
    for (double& v : values_) v /= sum;
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
  rank_ = static_cast<int>(std::count_if(
      values_.begin(), values_.end(), [&](double v) { return v > rank_eps; }));
}

// Bipartition ----------------------------------------------------------------

Bipartition::Bipartition(std::vector<int> subset, int num_subsystems)
    : subset_(sorted_unique(subset)), n_(num_subsystems) {
  if (n_ < 2) throw DomainError("a bipartition needs at least 2 subsystems");
  if (subset_.empty()) throw DomainError("bipartition side is empty");
  for (int s : subset_) {
    if (s < 0 || s >= n_) {
      throw DomainError("unknown subsystem label " + std::to_string(s));
    }
  }
  for (int i = 0; i < n_; ++i) {
    if (!std::binary_search(subset_.begin(), subset_.end(), i)) {
      complement_.push_back(i);
    }
  }
  if (complement_.empty()) throw DomainError("bipartition complement is empty");
}

// Partial traces -------------------------------------------------------------

BipartiteReshaper::BipartiteReshaper(std::span<const int> dims,
                                     const Bipartition& cut) {
  if (cut.num_subsystems() != static_cast<int>(dims.size())) {
    throw DomainError("bipartition does not match the state's subsystems");
  }
  std::vector<bool> in_first(dims.size(), false);
  for (int s : cut.subset()) in_first[static_cast<std::size_t>(s)] = true;
  const auto split = split_indices(dims, in_first);
  rows_ = static_cast<Eigen::Index>(split.first_dim);
  cols_ = static_cast<Eigen::Index>(split.second_dim);
  row_of_.assign(split.first.begin(), split.first.end());
  col_of_.assign(split.second.begin(), split.second.end());
}

Matrix BipartiteReshaper::reshape(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != row_of_.size()) {
    throw DomainError("vector length does not match the register");
  }
  Matrix m(rows_, cols_);
  for (std::size_t f = 0; f < row_of_.size(); ++f) {
    m(row_of_[f], col_of_[f]) = v[static_cast<Eigen::Index>(f)];
  }
  return m;
}

Vector BipartiteReshaper::flatten(const Matrix& m) const {
  Vector v(static_cast<Eigen::Index>(row_of_.size()));
  for (std::size_t f = 0; f < row_of_.size(); ++f) {
    v[static_cast<Eigen::Index>(f)] = m(row_of_[f], col_of_[f]);
  }
  return v;
}

Matrix bipartite_matrix(const PureState& psi, const Bipartition& cut) {
  return BipartiteReshaper(psi.dims(), cut).reshape(psi.amplitudes());
}

DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep) {
  const auto kept = sorted_unique(keep);
  if (kept.empty()) throw DomainError("partial trace keep set is empty");
  for (int s : kept) {
    if (s < 0 || s >= psi.num_subsystems()) {
      throw DomainError("unknown subsystem label " + std::to_string(s));
    }
  }
  std::vector<int> kept_dims;
  for (int s : kept) kept_dims.push_back(psi.dims()[static_cast<std::size_t>(s)]);
  if (static_cast<int>(kept.size()) == psi.num_subsystems()) {
    return DensityMatrix::from_pure(psi);
  }
  const Matrix m = bipartite_matrix(psi, Bipartition(kept, psi.num_subsystems()));
  return DensityMatrix(kept, kept_dims, hermitize(m * m.adjoint()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const auto kept = sorted_unique(keep);
  if (kept.empty()) throw DomainError("partial trace keep set is empty");
  const auto& labels = rho.labels();
  std::vector<bool> in_first(labels.size(), false);
  std::vector<int> kept_dims;
  for (int s : kept) {
    const auto it = std::find(labels.begin(), labels.end(), s);
    if (it == labels.end()) {
      throw DomainError("unknown subsystem label " + std::to_string(s));
    }
    in_first[static_cast<std::size_t>(it - labels.begin())] = true;
  }
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (in_first[p]) kept_dims.push_back(rho.dims()[p]);
  }
  // kept_dims follows position order; reorder labels the same way.
  std::vector<int> kept_labels;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (in_first[p]) kept_labels.push_back(labels[p]);
  }
  const auto split = split_indices(rho.dims(), in_first);
  // by_rest[t][a] = full index with kept index a and traced index t
  std::vector<std::vector<std::size_t>> by_rest(
      split.second_dim, std::vector<std::size_t>(split.first_dim));
  for (std::size_t f = 0; f < split.first.size(); ++f) {
    by_rest[split.second[f]][split.first[f]] = f;
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(split.first_dim),
                            static_cast<Eigen::Index>(split.first_dim));
  const Matrix& m = rho.matrix();
  for (const auto& block : by_rest) {
    for (std::size_t a = 0; a < block.size(); ++a) {
      for (std::size_t b = 0; b < block.size(); ++b) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            m(static_cast<Eigen::Index>(block[a]),
              static_cast<Eigen::Index>(block[b]));
      }
    }
  }
  return DensityMatrix(kept_labels, kept_dims, hermitize(out));
}

// Spectra --------------------------------------------------------------------

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho.matrix()),
                                           Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

SchmidtSpectrum schmidt_decompose(const PureState& psi, const Bipartition& cut,
                                  double rank_eps) {
  const Matrix m = bipartite_matrix(psi, cut);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m * m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return SchmidtSpectrum(std::vector<double>(ev.data(), ev.data() + ev.size()),
                         rank_eps);
}

namespace {

MomentVector power_sums(const std::vector<double>& lambda, int k) {
  if (k < 1) throw DomainError("number of moments must be >= 1");
  MomentVector out;
  out.moments.assign(static_cast<std::size_t>(k), 0.0);
  for (double l : lambda) {
    double p = l;
    for (int j = 0; j < k; ++j) {
      out.moments[static_cast<std::size_t>(j)] += p;
      p *= l;
    }
  }
  return out;
}

}  // namespace

MomentVector trace_powers(const DensityMatrix& rho, int k) {
  return power_sums(eigenvalues(rho), k);
}

MomentVector trace_powers(const SchmidtSpectrum& spec, int k) {
  return power_sums(spec.values(), k);
}

// Random states and local unitaries ------------------------------------------

PureState random_pure_state(std::vector<int> dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  Vector amps(total);
  for (Eigen::Index i = 0; i < total; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    amps[i] = Complex(re, im);
  }
  return PureState::normalized(std::move(dims), std::move(amps));
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

PureState apply_local(const PureState& psi, std::span<const Matrix> unitaries) {
  const auto& dims = psi.dims();
  if (unitaries.size() != dims.size()) {
    throw DomainError("need exactly one local unitary per subsystem");
  }
  const auto strides = strides_of(dims);
  Vector cur = psi.amplitudes();
  const auto total = static_cast<std::size_t>(cur.size());
  for (std::size_t p = 0; p < dims.size(); ++p) {
    const auto d = static_cast<std::size_t>(dims[p]);
    const Matrix& u = unitaries[p];
    if (static_cast<std::size_t>(u.rows()) != d ||
        static_cast<std::size_t>(u.cols()) != d) {
      throw DomainError("local unitary has the wrong shape");
    }
    const std::size_t inner = strides[p];
    const std::size_t outer = total / (d * inner);
    Vector next = Vector::Zero(cur.size());
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t in = 0; in < inner; ++in) {
        const std::size_t base = o * d * inner + in;
        for (std::size_t a = 0; a < d; ++a) {
          Complex acc = 0.0;
          for (std::size_t b = 0; b < d; ++b) {
            acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                   cur[static_cast<Eigen::Index>(base + b * inner)];
          }
          next[static_cast<Eigen::Index>(base + a * inner)] = acc;
        }
      }
    }
    cur = std::move(next);
  }
  return PureState::normalized(dims, std::move(cur));
}

}  // namespace icem
