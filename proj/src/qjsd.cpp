#include "qcoh/qjsd.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace qcoh {

namespace detail {

double entropy_matrix(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

double qjsd_matrices(const Matrix& rho, const Matrix& sigma) {
  // Additions are IEEE-commutative, so swapping the arguments gives a
  // bitwise identical result.
  Matrix avg = (rho + sigma) / 2.0;
  double j = entropy_matrix(avg) - 0.5 * (entropy_matrix(rho) + entropy_matrix(sigma));
  return j < 0.0 ? 0.0 : j;
}

}  // namespace detail

double qjsd(const QuantumState& rho, const QuantumState& sigma) {
  if (rho.dims() != sigma.dims())
    throw std::invalid_argument("qjsd: states have different dims");
  Matrix avg = (rho.matrix() + sigma.matrix()) / 2.0;
  double j = detail::entropy_matrix(avg) -
             0.5 * (vn_entropy(rho) + vn_entropy(sigma));
  return j < 0.0 ? 0.0 : j;
}

double qjsd_distance(const QuantumState& rho, const QuantumState& sigma) {
  return std::sqrt(qjsd(rho, sigma));
}

}  // namespace qcoh
