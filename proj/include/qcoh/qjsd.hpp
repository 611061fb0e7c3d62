// qjsd.hpp — quantum Jensen-Shannon divergence and the square-root distance.

#pragma once

#include "qcoh/quantum_state.hpp"

namespace qcoh {

/// J(rho, sigma) = S((rho+sigma)/2) - S(rho)/2 - S(sigma)/2 in bits.
/// Symmetric, bounded to [0,1], zero iff the arguments coincide.
/// Throws std::invalid_argument on mismatched dims.
double qjsd(const QuantumState& rho, const QuantumState& sigma);

/// sqrt(J); the distance used for every coherence in this library.
double qjsd_distance(const QuantumState& rho, const QuantumState& sigma);

namespace detail {

// Raw-matrix variant without state validation; both matrices Hermitian with
// unit trace.  Used by the minimizers on already-vetted data.
double qjsd_matrices(const Matrix& rho, const Matrix& sigma);

// Entropy in bits of a Hermitian PSD matrix (eigenvalues clipped at 0).
double entropy_matrix(const Matrix& m);

}  // namespace detail

}  // namespace qcoh
