// basis.hpp — per-site reference bases defining the incoherent set.

#pragma once

#include "qcoh/quantum_state.hpp"

#include <vector>

namespace qcoh {

/// One orthonormal basis per site; columns of each matrix are the basis
/// vectors.  The default everywhere is the computational basis.
class BasisSpec {
 public:
  /// Identity basis on every site.
  static BasisSpec computational(std::vector<int> dims);

  /// Validates per-site orthonormality within 1e-12.
  explicit BasisSpec(std::vector<Matrix> site_bases);

  const std::vector<Matrix>& site_bases() const { return site_bases_; }
  std::vector<int> dims() const;
  int num_sites() const { return static_cast<int>(site_bases_.size()); }

  /// True when every site basis is the identity within 1e-14 (fast path:
  /// no rotation needed).
  bool is_computational() const;

  /// Tensor product of the site basis matrices, site 1 most significant.
  Matrix product_unitary() const;

  /// Basis restricted to the listed sites (1-based, strictly increasing).
  BasisSpec restricted(const std::vector<int>& sites) const;

 private:
  std::vector<Matrix> site_bases_;
};

}  // namespace qcoh
