#include "qcoh/random_states.hpp"

#include <Eigen/QR>

namespace qcoh {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 step on seed + counter.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vector random_amplitudes(long dim, Rng& rng) {
  std::normal_distribution<double> nd;
  Vector v(dim);
  for (long i = 0; i < dim; ++i) v[i] = Complex(nd(rng), nd(rng));
  v /= v.norm();
  return v;
}

QuantumState random_pure_state(std::vector<int> dims, Rng& rng) {
  long n = 1;
  for (int d : dims) n *= d;
  return QuantumState::from_pure(std::move(dims), random_amplitudes(n, rng));
}

QuantumState random_mixed_state(std::vector<int> dims, int rank, Rng& rng) {
  long n = 1;
  for (int d : dims) n *= d;
  long r = rank <= 0 ? n : rank;
  std::normal_distribution<double> nd;
  Matrix g(n, r);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < r; ++j) g(i, j) = Complex(nd(rng), nd(rng));
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return QuantumState::unchecked(std::move(dims), std::move(m));
}

Matrix random_unitary(long dim, Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix g(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) g(i, j) = Complex(nd(rng), nd(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace qcoh
