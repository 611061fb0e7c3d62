// random_states.hpp — seeded generators for test corpora and the selftest
// suites.  Mixed states follow the induced measure G G† / Tr(G G†) with
// complex standard-normal G of the requested rank.

#pragma once

#include "qcoh/quantum_state.hpp"

#include <cstdint>
#include <random>

namespace qcoh {

using Rng = std::mt19937_64;

/// Deterministically derives an independent stream seed; counter-based so
/// serial and parallel schedules agree.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

/// Haar-like random normalized amplitude vector.
Vector random_amplitudes(long dim, Rng& rng);

QuantumState random_pure_state(std::vector<int> dims, Rng& rng);

/// rank == 0 means full rank.
QuantumState random_mixed_state(std::vector<int> dims, int rank, Rng& rng);

/// Unitary from the QR decomposition of a complex Gaussian matrix, with the
/// R-diagonal phase fix that makes the distribution Haar.
Matrix random_unitary(long dim, Rng& rng);

}  // namespace qcoh
