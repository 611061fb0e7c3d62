// named_states.hpp — the named state families: GHZ, Werner-GHZ, W, Bell and
// the |−⟩ product state.

#pragma once

#include "qcoh/quantum_state.hpp"

namespace qcoh {

/// cos(phi)|000> + sin(phi)|111>, as a density matrix.
QuantumState ghz_state(double phi);

/// (1-mu)/8 * I + mu |GHZ(phi)><GHZ(phi)|; mu must lie in [0,1].
QuantumState werner_ghz(double mu, double phi);

/// sin(theta)cos(phi)|100> + sin(theta)sin(phi)|010> + cos(theta)|001>.
QuantumState w_state(double theta, double phi);

/// (|00> + sign|11>)/sqrt(2); sign must be +1 or -1.
QuantumState bell_state(int sign);

/// N-fold tensor power of |-><-| with |-> = (|0>-|1>)/sqrt(2).
QuantumState product_plus_state(int n_sites);

}  // namespace qcoh
