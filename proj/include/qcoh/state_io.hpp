// state_io.hpp — text format for states: a JSON document with fields
//   dims   : list of site dimensions
//   matrix : row-major nested list of [real, imaginary] pairs
// Writers emit 17 significant digits; readers run full state validation.

#pragma once

#include "qcoh/quantum_state.hpp"

#include <iosfwd>
#include <string>

namespace qcoh {

void save_state(std::ostream& os, const QuantumState& rho);
void save_state(const std::string& path, const QuantumState& rho);

/// Parses and validates; throws std::invalid_argument on malformed input or
/// violated state invariants.
QuantumState load_state(std::istream& is);
QuantumState load_state(const std::string& path);

}  // namespace qcoh
