#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace icem {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Input violates a documented precondition (bad cut, non-normalized state...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested dense buffer exceeds the configured amplitude cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRankEps = 1e-10;
inline constexpr std::size_t kDefaultMaxAmplitudes = std::size_t{1} << 20;

struct NumericConfig {
  double rank_eps = kRankEps;
  std::size_t max_amplitudes = kDefaultMaxAmplitudes;
};

/// Product of subsystem dimensions; throws DomainError on an invalid list.
std::size_t total_dimension(std::span<const int> dims);

/// Dense pure state over subsystems 0..n-1. Amplitudes are row-major with the
/// last subsystem index varying fastest.
class PureState {
 public:
  PureState(std::vector<int> dims, Vector amplitudes,
            const NumericConfig& cfg = {});

  /// Builds a state from unnormalized amplitudes.
  static PureState normalized(std::vector<int> dims, Vector amplitudes,
                              const NumericConfig& cfg = {});
  /// Computational basis product |digits[0] digits[1] ...>.
  static PureState basis(std::vector<int> dims, std::span<const int> digits);

  const std::vector<int>& dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }

 private:
  std::vector<int> dims_;
  Vector amplitudes_;
};

/// Tensor product in argument order.
PureState tensor(const PureState& a, const PureState& b);

/// Hermitian, PSD, unit-trace matrix. labels[i] names the original subsystem
/// that local factor i describes; dims[i] is its dimension.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<int> labels, std::vector<int> dims, Matrix matrix);
  /// Labels default to 0..n-1.
  DensityMatrix(std::vector<int> dims, Matrix matrix);

  static DensityMatrix from_pure(const PureState& psi);

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  std::vector<int> labels_;
  std::vector<int> dims_;
  Matrix matrix_;
};

/// Nonincreasing eigenvalues of a reduced state and its numerical rank.
class SchmidtSpectrum {
 public:
  /// Sorts, clamps negatives to zero and renormalizes. Throws DomainError when
  /// the values do not sum to one within 1e-9 or a value is below -1e-9.
  explicit SchmidtSpectrum(std::vector<double> values,
                           double rank_eps = kRankEps);

  const std::vector<double>& values() const { return values_; }
  int rank() const { return rank_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  int rank_ = 0;
};

/// Nonempty proper subset of the labels 0..n-1 and its complement.
class Bipartition {
 public:
  Bipartition(std::vector<int> subset, int num_subsystems);

  const std::vector<int>& subset() const { return subset_; }
  const std::vector<int>& complement() const { return complement_; }
  int num_subsystems() const { return n_; }
  Bipartition swapped() const { return Bipartition(complement_, n_); }

 private:
  std::vector<int> subset_;
  std::vector<int> complement_;
  int n_;
};

/// m[k-1] = Tr rho^k.
struct MomentVector {
  std::vector<double> moments;

  std::size_t size() const { return moments.size(); }
  /// Tr rho^k, 1-based.
  double operator()(std::size_t k) const { return moments.at(k - 1); }
};

DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Eigenvalues of rho sorted nonincreasing, clamped to [0, 1].
std::vector<double> eigenvalues(const DensityMatrix& rho);

SchmidtSpectrum schmidt_decompose(const PureState& psi, const Bipartition& cut,
                                  double rank_eps = kRankEps);

MomentVector trace_powers(const DensityMatrix& rho, int k);
/// Power sums of a spectrum, m_k = sum_i lambda_i^k for k = 1..K.
MomentVector trace_powers(const SchmidtSpectrum& spec, int k);

/// Normalized vector of i.i.d. standard complex Gaussians; deterministic per seed.
PureState random_pure_state(std::vector<int> dims, std::uint64_t seed);

/// Haar unitary via QR of a complex Ginibre matrix with phase correction.
Matrix random_unitary(int dim, std::mt19937_64& rng);

/// Applies U_0 (x) U_1 (x) ... to psi; one unitary per subsystem.
PureState apply_local(const PureState& psi, std::span<const Matrix> unitaries);

/// Maps full-register vectors to (dim subset) x (dim complement) matrices
/// and back. Index tables are computed once.
class BipartiteReshaper {
 public:
  BipartiteReshaper(std::span<const int> dims, const Bipartition& cut);

  Matrix reshape(const Vector& v) const;
  Vector flatten(const Matrix& m) const;
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

 private:
  std::vector<Eigen::Index> row_of_;
  std::vector<Eigen::Index> col_of_;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
};

/// Reshapes psi into a (dim subset) x (dim complement) matrix.
Matrix bipartite_matrix(const PureState& psi, const Bipartition& cut);

}  // namespace icem
