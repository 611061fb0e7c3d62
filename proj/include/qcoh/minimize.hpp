// minimize.hpp — the two constrained minimizations: closest incoherent state
// in a fixed product basis, and closest separable state over a site
// partition.  Both minimize the divergence J itself; distances are square
// roots taken downstream.

#pragma once

#include "qcoh/basis.hpp"
#include "qcoh/quantum_state.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qcoh {

struct OptimOptions {
  /// 0 = auto: 10 restarts for total dimension <= 64, 4 above.
  int restarts = 0;
  int max_iterations = 2000;
  double objective_tolerance = 1e-9;
  std::uint64_t seed = 1;
  /// Separable ansatz size; 0 = auto (4 for two-factor partitions of total
  /// dimension <= 16, 8 for three-factor qubit partitions, 16 otherwise).
  int k_override = 0;

  void validate() const;
};

/// Weighted mixture of product pure states over a site partition.
struct SeparableAnsatz {
  std::vector<int> dims;                    // full-system site dims
  std::vector<std::vector<int>> partition;  // 1-based site groups
  std::vector<double> weights;              // nonnegative, sum 1
  std::vector<std::vector<Vector>> factors; // [component][group], normalized

  int component_count() const { return static_cast<int>(weights.size()); }

  /// Σ_k p_k ⊗_g |ψ_{k,g}><ψ_{k,g}| as a validated state.
  QuantumState realize() const;
};

struct MinimizationResult {
  QuantumState minimizer;
  double objective = 0.0;  // the J value at the minimizer, not its root
  int iterations_used = 0;
  int restart_index = 0;
  bool converged = false;
  std::optional<SeparableAnsatz> ansatz;  // populated by closest_separable
};

/// Minimum of J(rho, sigma) over states sigma diagonal in the product basis.
/// Diagonal probabilities run through a softmax; descent is quasi-Newton on
/// finite-difference gradients, restart 0 starting from the diagonal
/// projection of rho.  Non-convergence is reported in the result, never
/// thrown.
MinimizationResult closest_incoherent(const QuantumState& rho,
                                      const BasisSpec& basis,
                                      const OptimOptions& opts = {});

/// Minimum of J(rho, sigma) over mixtures of products across the partition.
/// Restart 0 is the decohered-Schmidt initialization; the objective and its
/// analytic gradient are evaluated through the low-rank Gram form, so cost
/// scales with the ansatz size rather than the Hilbert dimension.
MinimizationResult closest_separable(const QuantumState& rho,
                                     const std::vector<std::vector<int>>& partition,
                                     const OptimOptions& opts = {});

namespace detail {

// Exposed for tests: analytic gradient of the separable objective, checked
// against finite differences.
struct SeparableProblem;
std::vector<std::vector<int>> full_split_partition(int n_sites);

}  // namespace detail

}  // namespace qcoh
