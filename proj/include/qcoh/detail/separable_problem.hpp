// separable_problem.hpp — low-rank evaluation of J(rho, sigma(theta)) for the
// separable ansatz, with the analytic gradient.
//
// sigma = Σ_k p_k |Ψ_k><Ψ_k| with Ψ_k a product over groups, so sigma has
// rank ≤ K and (rho+sigma)/2 rank ≤ K + rank(rho).  All spectra are taken on
// Gram matrices of those sizes; nothing scales with the Hilbert dimension
// beyond inner products.
//
// Parameter layout: K weight logits (softmax), then for each component k and
// each group g the raw complex factor entries (re, im interleaved),
// normalized on evaluation.

#pragma once

#include "qcoh/quantum_state.hpp"

#include <vector>

namespace qcoh::detail {

class SeparableProblem {
 public:
  /// rho is given by its spectral form in the group-major frame: weights q
  /// (descending, truncated below 1e-14) and the matching orthonormal
  /// columns phi.  s_rho is the entropy of the *full* spectrum.
  SeparableProblem(Eigen::VectorXd q, Matrix phi, double s_rho,
                   std::vector<long> group_dims, int k_components);

  long param_count() const { return n_params_; }
  int component_count() const { return k_; }
  const std::vector<long>& group_dims() const { return group_dims_; }

  /// J value; fills the analytic gradient when grad != nullptr.
  double eval(const Eigen::VectorXd& params, Eigen::VectorXd* grad) const;

  /// Pack weights and raw factor vectors into a parameter vector
  /// (logits = log of floored weights).
  Eigen::VectorXd encode(const std::vector<double>& weights,
                         const std::vector<std::vector<Vector>>& factors) const;

  /// Unpack a parameter vector into normalized weights and factors.
  void decode(const Eigen::VectorXd& params, std::vector<double>& weights,
              std::vector<std::vector<Vector>>& factors) const;

 private:
  Vector component_vector(const std::vector<Vector>& zhat) const;
  Vector contract_phi_except(const Vector& phi, const std::vector<Vector>& zhat,
                             int group) const;

  Eigen::VectorXd q_;
  Matrix phi_;
  double s_rho_ = 0.0;
  std::vector<long> group_dims_;
  std::vector<long> strides_;
  long dim_ = 1;
  int k_ = 0;
  int n_groups_ = 0;
  long n_params_ = 0;
};

}  // namespace qcoh::detail
