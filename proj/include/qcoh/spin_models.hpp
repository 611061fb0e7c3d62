// spin_models.hpp — the two-site transverse Ising Hamiltonian and the XXZ
// Heisenberg chain, with exact diagonalization and deterministic degeneracy
// handling.

#pragma once

#include "qcoh/quantum_state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcoh {

// ---------------------------- Pauli matrices --------------------------------

Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// ------------------------------- ModelSpec ----------------------------------

enum class ModelVariant { Ising2, Xxz };
enum class Boundary { Periodic, Open };

/// Hamiltonian parameters for the supported models.
///   Ising2:  H = lambda σx⊗σx + J(σx1 + σx2) + ε lambda (σz1 + σz2), N = 2.
///   XXZ:     H = J Σ_n (σx σx + σy σy + Δ σz σz) on N sites.
struct ModelSpec {
  ModelVariant variant = ModelVariant::Ising2;
  double lambda = 1.0;
  double coupling_j = 1.0;
  double epsilon = 0.2;
  double delta = 1.0;
  int n_sites = 2;
  Boundary boundary = Boundary::Periodic;

  static ModelSpec ising2(double lambda, double j, double epsilon);
  static ModelSpec xxz(int n, double j, double delta, Boundary boundary);

  /// Throws std::invalid_argument on out-of-contract parameters.
  void validate() const;
};

// ------------------------- Hamiltonian construction -------------------------

/// Dense 4x4 two-site Ising Hamiltonian (real symmetric in the computational
/// basis).
Matrix build_ising2(double lambda, double j, double epsilon);

/// XXZ Hamiltonian stored block-diagonally over total-Sz sectors.  Sector k
/// holds the basis states with k down spins, listed by ascending flat index;
/// Sz = (N - 2k)/2.
struct XxzBlocks {
  int n_sites = 0;
  // blocks[k]: dense Hermitian matrix over basis_states[k].
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<std::vector<long>> basis_states;

  /// Embeds the blocks into the full 2^N-dimensional operator (small N only;
  /// used by tests and the dense cross-check).
  Matrix to_dense() const;
};

XxzBlocks build_xxz(int n, double j, double delta, Boundary boundary);

// ------------------------------ Ground states -------------------------------

struct GroundStateResult {
  QuantumState state;         // pure, as a density matrix
  double energy = 0.0;        // global minimum over all sectors
  double degeneracy_gap = 0.0;  // energy distance to the next level
  std::optional<double> sector_sz;  // total-Sz label, XXZ only
};

/// Lowest eigenstate across all sectors.  Ties within 1e-10 resolve to the
/// largest Sz; eigenvector phase is fixed so the largest-magnitude amplitude
/// is real positive.  Throws std::length_error when the total dimension
/// exceeds 2^14.
GroundStateResult ground_state(const ModelSpec& spec);

}  // namespace qcoh
