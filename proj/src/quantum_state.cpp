#include "qcoh/quantum_state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcoh {

namespace {

long product_of_dims(const std::vector<int>& dims) {
  long n = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("site dimension must be positive");
    n *= d;
  }
  return n;
}

void check_shape(const std::vector<int>& dims, const Matrix& m) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  long n = product_of_dims(dims);
  if (m.rows() != m.cols() || m.rows() != n) {
    std::ostringstream os;
    os << "matrix side " << m.rows() << "x" << m.cols()
       << " does not match product of dims " << n;
    throw std::invalid_argument(os.str());
  }
}

void check_hermitian_trace(const Matrix& m) {
  if (max_abs(m - m.adjoint()) > kHermitianTol)
    throw std::invalid_argument("matrix is not Hermitian within 1e-10");
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTol)
    throw std::invalid_argument("matrix trace is not 1 within 1e-10");
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void fix_global_phase(Vector& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double mag = std::abs(v[i]);
    if (mag > best_mag + 1e-15) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  v *= std::conj(v[best]) / best_mag;
}

QuantumState::QuantumState(std::vector<int> dims, Matrix matrix) {
  check_shape(dims, matrix);
  check_hermitian_trace(matrix);
  matrix = (matrix + matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("matrix has eigenvalue below -1e-10");
  dims_ = std::move(dims);
  matrix_ = std::move(matrix);
}

QuantumState QuantumState::from_pure(std::vector<int> dims, const Vector& psi) {
  long n = product_of_dims(dims);
  if (psi.size() != n)
    throw std::invalid_argument("pure vector length does not match dims");
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("pure vector is not normalized within 1e-10");
  QuantumState out;
  out.dims_ = std::move(dims);
  out.matrix_ = psi * psi.adjoint();
  out.pure_ = psi;
  return out;
}

QuantumState QuantumState::unchecked(std::vector<int> dims, Matrix matrix) {
  check_shape(dims, matrix);
  check_hermitian_trace(matrix);
  QuantumState out;
  out.dims_ = std::move(dims);
  out.matrix_ = (matrix + matrix.adjoint()) / 2.0;
  return out;
}

SpectralDecomposition spectral_decomposition(const QuantumState& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -kPsdTol)
    throw std::invalid_argument("state has eigenvalue below -1e-10");
  ev = ev.cwiseMax(0.0).cwiseMin(1.0);
  double sum = ev.sum();
  if (sum > 0.0) ev /= sum;
  return SpectralDecomposition{ev, es.eigenvectors()};
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  long na = a.dim(), nb = b.dim();
  Matrix out(na * nb, na * nb);
  for (long i = 0; i < na; ++i)
    for (long j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  if (a.pure_vector() && b.pure_vector()) {
    Vector psi(na * nb);
    for (long i = 0; i < na; ++i)
      psi.segment(i * nb, nb) = (*a.pure_vector())[i] * (*b.pure_vector());
    QuantumState s = QuantumState::from_pure(std::move(dims), psi);
    return s;
  }
  return QuantumState::unchecked(std::move(dims), std::move(out));
}

QuantumState partial_trace(const QuantumState& rho, const std::vector<int>& keep) {
  const auto& dims = rho.dims();
  const int n_sites = rho.num_sites();
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 1 || keep[i] > n_sites)
      throw std::invalid_argument("keep index out of range 1..N");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("keep indices must be strictly increasing");
  }

  std::vector<int> keep_dims, trace_dims;
  std::vector<int> is_kept(n_sites, 0);
  for (int s : keep) is_kept[s - 1] = 1;
  for (int s = 0; s < n_sites; ++s)
    (is_kept[s] ? keep_dims : trace_dims).push_back(dims[s]);

  long dk = 1, dt = 1;
  for (int d : keep_dims) dk *= d;
  for (int d : trace_dims) dt *= d;

  // Strides of each site in the flat index, site 1 most significant.
  std::vector<long> stride(n_sites, 1);
  for (int s = n_sites - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  // flat(original) = sum over kept sites of digit*stride + same for traced.
  // Enumerate kept and traced multi-indices; compose base offsets.
  std::vector<long> keep_offset(dk, 0), trace_offset(dt, 0);
  {
    std::vector<int> digits(keep.size(), 0);
    for (long idx = 0; idx < dk; ++idx) {
      long off = 0;
      long rem = idx;
      for (size_t j = 0; j < keep.size(); ++j) {
        long block = 1;
        for (size_t l = j + 1; l < keep.size(); ++l) block *= keep_dims[l];
        long digit = rem / block;
        rem %= block;
        off += digit * stride[keep[j] - 1];
      }
      keep_offset[idx] = off;
    }
    std::vector<int> traced_sites;
    for (int s = 0; s < n_sites; ++s)
      if (!is_kept[s]) traced_sites.push_back(s);
    for (long idx = 0; idx < dt; ++idx) {
      long off = 0;
      long rem = idx;
      for (size_t j = 0; j < traced_sites.size(); ++j) {
        long block = 1;
        for (size_t l = j + 1; l < traced_sites.size(); ++l) block *= trace_dims[l];
        long digit = rem / block;
        rem %= block;
        off += digit * stride[traced_sites[j]];
      }
      trace_offset[idx] = off;
    }
  }

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (long i = 0; i < dk; ++i)
    for (long j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      for (long t = 0; t < dt; ++t)
        acc += m(keep_offset[i] + trace_offset[t], keep_offset[j] + trace_offset[t]);
      out(i, j) = acc;
    }
  return QuantumState::unchecked(std::move(keep_dims), std::move(out));
}

QuantumState permute_sites(const QuantumState& rho, const std::vector<int>& perm) {
  const int n_sites = rho.num_sites();
  if (static_cast<int>(perm.size()) != n_sites)
    throw std::invalid_argument("permutation length must equal site count");
  std::vector<int> seen(n_sites, 0);
  for (int p : perm) {
    if (p < 1 || p > n_sites || seen[p - 1]++)
      throw std::invalid_argument("perm must be a permutation of 1..N");
  }

  const auto& dims = rho.dims();
  std::vector<int> new_dims(n_sites);
  for (int i = 0; i < n_sites; ++i) new_dims[i] = dims[perm[i] - 1];

  std::vector<long> stride(n_sites, 1);
  for (int s = n_sites - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  long n = rho.dim();
  // map[new flat index] = old flat index
  std::vector<long> map(n, 0);
  for (long idx = 0; idx < n; ++idx) {
    long rem = idx, old = 0;
    for (int i = 0; i < n_sites; ++i) {
      long block = 1;
      for (int l = i + 1; l < n_sites; ++l) block *= new_dims[l];
      long digit = rem / block;
      rem %= block;
      old += digit * stride[perm[i] - 1];
    }
    map[idx] = old;
  }

  const Matrix& m = rho.matrix();
  Matrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  if (rho.pure_vector()) {
    Vector psi(n);
    for (long i = 0; i < n; ++i) psi[i] = (*rho.pure_vector())[map[i]];
    return QuantumState::from_pure(std::move(new_dims), psi);
  }
  return QuantumState::unchecked(std::move(new_dims), std::move(out));
}

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double p = eigenvalues[i];
    if (p < -kPsdTol)
      throw std::invalid_argument("spectrum entry below -1e-10");
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s < 0.0 ? 0.0 : s;
}

double vn_entropy(const QuantumState& rho) {
  if (rho.pure_vector()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

QuantumState maximally_mixed(std::vector<int> dims) {
  long n = product_of_dims(dims);
  Matrix m = Matrix::Identity(n, n) / static_cast<double>(n);
  return QuantumState::unchecked(std::move(dims), std::move(m));
}

}  // namespace qcoh
