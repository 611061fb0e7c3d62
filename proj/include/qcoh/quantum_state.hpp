// quantum_state.hpp — validated density matrices on tensor products of sites,
// spectral decomposition, entropy, tensor/partial-trace algebra.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace qcoh {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerances for density matrices.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Density matrix together with the list of per-site Hilbert dimensions.
/// Site 1 is the most significant tensor factor of the flat index, i.e. for
/// dims {d1,...,dN} the flat index of the configuration (i1,...,iN) is
/// ((i1*d2 + i2)*d3 + ...) + iN.
///
/// The checked constructor verifies Hermiticity, unit trace and positive
/// semidefiniteness (min eigenvalue >= -1e-10) and hermitizes once,
/// (M + M†)/2; the matrix is immutable afterwards.
class QuantumState {
 public:
  /// Fully validated construction; throws std::invalid_argument on any
  /// violated invariant.
  QuantumState(std::vector<int> dims, Matrix matrix);

  /// Pure state |psi><psi|. The amplitude vector must be normalized within
  /// 1e-10; the vector is cached and retrievable via pure_vector().
  static QuantumState from_pure(std::vector<int> dims, const Vector& psi);

  /// Construction for matrices that are positive semidefinite by
  /// construction (mixtures of outer products, rotated diagonals).  Skips
  /// the eigenvalue check but still verifies shape, Hermiticity and trace.
  static QuantumState unchecked(std::vector<int> dims, Matrix matrix);

  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  int num_sites() const { return static_cast<int>(dims_.size()); }
  long dim() const { return matrix_.rows(); }

  /// Amplitude vector if this state was built via from_pure, otherwise empty.
  const std::optional<Vector>& pure_vector() const { return pure_; }

 private:
  QuantumState() = default;

  std::vector<int> dims_;
  Matrix matrix_;
  std::optional<Vector> pure_;
};

/// Eigensystem of a state: ascending eigenvalues clipped to [0,1] and
/// renormalized to sum 1, with the unitary of column eigenvectors.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;
};

SpectralDecomposition spectral_decomposition(const QuantumState& rho);

/// Kronecker product; a's sites become the more significant factors.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

/// Reduced state on the listed sites (1-based, strictly increasing).
QuantumState partial_trace(const QuantumState& rho, const std::vector<int>& keep);

/// Relabels sites: site i of the result is site perm[i-1] of the input.
/// perm must be a permutation of 1..N.
QuantumState permute_sites(const QuantumState& rho, const std::vector<int>& perm);

/// Von Neumann entropy in bits, -Tr rho log2 rho with 0 log 0 = 0.
double vn_entropy(const QuantumState& rho);

/// Entropy in bits of a probability vector (negatives below -1e-10 rejected,
/// tiny negatives clipped).
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);

/// I/d on the given dims.
QuantumState maximally_mixed(std::vector<int> dims);

/// Maximum absolute entry of a matrix; convenience for tolerance checks.
double max_abs(const Matrix& m);

/// Multiplies by a phase so the largest-magnitude entry is real positive.
/// Deterministic tie-break: lowest index wins.
void fix_global_phase(Vector& v);

}  // namespace qcoh
