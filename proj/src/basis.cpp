#include "qcoh/basis.hpp"

#include <stdexcept>

namespace qcoh {

BasisSpec BasisSpec::computational(std::vector<int> dims) {
  std::vector<Matrix> bases;
  bases.reserve(dims.size());
  for (int d : dims) bases.push_back(Matrix::Identity(d, d));
  return BasisSpec(std::move(bases));
}

BasisSpec::BasisSpec(std::vector<Matrix> site_bases) {
  if (site_bases.empty())
    throw std::invalid_argument("basis must cover at least one site");
  for (const Matrix& b : site_bases) {
    if (b.rows() != b.cols())
      throw std::invalid_argument("site basis must be square (one vector per dimension)");
    Matrix gram = b.adjoint() * b;
    if (max_abs(gram - Matrix::Identity(b.rows(), b.cols())) > 1e-12)
      throw std::invalid_argument("site basis vectors are not orthonormal within 1e-12");
  }
  site_bases_ = std::move(site_bases);
}

std::vector<int> BasisSpec::dims() const {
  std::vector<int> d;
  d.reserve(site_bases_.size());
  for (const Matrix& b : site_bases_) d.push_back(static_cast<int>(b.rows()));
  return d;
}

bool BasisSpec::is_computational() const {
  for (const Matrix& b : site_bases_)
    if (max_abs(b - Matrix::Identity(b.rows(), b.cols())) > 1e-14) return false;
  return true;
}

Matrix BasisSpec::product_unitary() const {
  Matrix u = site_bases_[0];
  for (size_t s = 1; s < site_bases_.size(); ++s) {
    const Matrix& b = site_bases_[s];
    Matrix next(u.rows() * b.rows(), u.cols() * b.cols());
    for (long i = 0; i < u.rows(); ++i)
      for (long j = 0; j < u.cols(); ++j)
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = u(i, j) * b;
    u = std::move(next);
  }
  return u;
}

BasisSpec BasisSpec::restricted(const std::vector<int>& sites) const {
  std::vector<Matrix> bases;
  for (size_t i = 0; i < sites.size(); ++i) {
    int s = sites[i];
    if (s < 1 || s > num_sites())
      throw std::invalid_argument("restricted site index out of range");
    if (i > 0 && s <= sites[i - 1])
      throw std::invalid_argument("restricted sites must be strictly increasing");
    bases.push_back(site_bases_[s - 1]);
  }
  return BasisSpec(std::move(bases));
}

}  // namespace qcoh
