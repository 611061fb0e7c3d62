// oracles.hpp — independent brute-force and closed-form references used by
// the selftest command and the test suites.  Nothing here goes through the
// variational minimizers.

#pragma once

#include "qcoh/quantum_state.hpp"

namespace qcoh::oracles {

/// Binary entropy in bits, from scalar arithmetic only.
double binary_entropy(double p);

/// Closed-form sqrt-QJSD between the Bell state (|00>-|11>)/sqrt(2) and the
/// dephased mixture (|00><00|+|11><11|)/2: average-state eigenvalues are
/// {3/4, 1/4}, so J = H2(3/4) - 1/2.
double bell_anchor_distance();

/// Closed-form J(|0><0|, |+><+|): average-state eigenvalues (1 ± 1/sqrt2)/2.
double qjsd_zero_plus();

/// Minimum of J(rho, diag(p)) over the probability simplex by dense grid
/// scan with the given step (dimension from rho; practical for dim <= 4).
double incoherent_grid_scan(const QuantumState& rho, double step);

/// Same for a single qubit by 1-D scan with the given number of points.
double single_qubit_incoherent_scan(const QuantumState& rho, int points);

}  // namespace qcoh::oracles
