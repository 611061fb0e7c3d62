#include "qcoh/spin_models.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qcoh {

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ModelSpec ModelSpec::ising2(double lambda, double j, double epsilon) {
  ModelSpec s;
  s.variant = ModelVariant::Ising2;
  s.lambda = lambda;
  s.coupling_j = j;
  s.epsilon = epsilon;
  s.n_sites = 2;
  return s;
}

ModelSpec ModelSpec::xxz(int n, double j, double delta, Boundary boundary) {
  ModelSpec s;
  s.variant = ModelVariant::Xxz;
  s.n_sites = n;
  s.coupling_j = j;
  s.delta = delta;
  s.boundary = boundary;
  return s;
}

void ModelSpec::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(lambda) || !finite(coupling_j) || !finite(epsilon) || !finite(delta))
    throw std::invalid_argument("model couplings must be finite");
  if (variant == ModelVariant::Ising2 && n_sites != 2)
    throw std::invalid_argument("the two-site Ising model requires N = 2");
  if (variant == ModelVariant::Xxz && n_sites < 2)
    throw std::invalid_argument("XXZ chain requires N >= 2");
}

Matrix build_ising2(double lambda, double j, double epsilon) {
  Matrix sx = sigma_x(), sz = sigma_z(), id = Matrix::Identity(2, 2);
  auto kron2 = [](const Matrix& a, const Matrix& b) {
    Matrix out(4, 4);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) out.block(p * 2, q * 2, 2, 2) = a(p, q) * b;
    return out;
  };
  return lambda * kron2(sx, sx) + j * (kron2(sx, id) + kron2(id, sx)) +
         epsilon * lambda * (kron2(sz, id) + kron2(id, sz));
}

XxzBlocks build_xxz(int n, double j, double delta, Boundary boundary) {
  if (n < 2) throw std::invalid_argument("XXZ chain requires N >= 2");
  if (n > 14) throw std::length_error("XXZ chain capped at N = 14");

  // Site s (1-based, most significant first) lives on bit n - s.
  auto site_mask = [n](int site) { return 1L << (n - site); };
  std::vector<std::pair<int, int>> bonds;
  if (boundary == Boundary::Periodic) {
    for (int s = 1; s <= n; ++s) bonds.emplace_back(s, s % n + 1);
  } else {
    for (int s = 1; s < n; ++s) bonds.emplace_back(s, s + 1);
  }

  XxzBlocks out;
  out.n_sites = n;
  out.blocks.resize(n + 1);
  out.basis_states.resize(n + 1);

  long dim = 1L << n;
  std::vector<long> index_in_sector(dim, -1);
  for (long b = 0; b < dim; ++b) {
    int k = std::popcount(static_cast<unsigned long>(b));
    index_in_sector[b] = static_cast<long>(out.basis_states[k].size());
    out.basis_states[k].push_back(b);
  }

  for (int k = 0; k <= n; ++k) {
    const auto& basis = out.basis_states[k];
    long m = static_cast<long>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (long r = 0; r < m; ++r) {
      long b = basis[r];
      double diag = 0.0;
      for (auto [sa, sb] : bonds) {
        long ma = site_mask(sa), mb = site_mask(sb);
        double za = (b & ma) ? -1.0 : 1.0;
        double zb = (b & mb) ? -1.0 : 1.0;
        diag += j * delta * za * zb;
        if (za * zb < 0.0) {
          // sigma.x sigma.x + sigma.y sigma.y flips an antiparallel pair with
          // amplitude 2J.
          long flipped = b ^ (ma | mb);
          h(r, index_in_sector[flipped]) += 2.0 * j;
        }
      }
      h(r, r) = diag;
    }
    out.blocks[k] = std::move(h);
  }
  return out;
}

Matrix XxzBlocks::to_dense() const {
  long dim = 1L << n_sites;
  Matrix h = Matrix::Zero(dim, dim);
  for (size_t k = 0; k < blocks.size(); ++k) {
    const auto& basis = basis_states[k];
    for (long r = 0; r < blocks[k].rows(); ++r)
      for (long c = 0; c < blocks[k].cols(); ++c)
        h(basis[r], basis[c]) = blocks[k](r, c);
  }
  return h;
}

GroundStateResult ground_state(const ModelSpec& spec) {
  spec.validate();

  if (spec.variant == ModelVariant::Ising2) {
    Matrix h = build_ising2(spec.lambda, spec.coupling_j, spec.epsilon);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector psi = es.eigenvectors().col(0);
    fix_global_phase(psi);
    return GroundStateResult{QuantumState::from_pure({2, 2}, psi),
                             es.eigenvalues()[0],
                             es.eigenvalues()[1] - es.eigenvalues()[0],
                             std::nullopt};
  }

  if (spec.n_sites > 14)
    throw std::length_error("ground_state: total dimension exceeds 2^14");
  XxzBlocks blocks =
      build_xxz(spec.n_sites, spec.coupling_j, spec.delta, spec.boundary);

  struct SectorMin {
    int k;
    double energy;
    Eigen::VectorXd vec;
  };
  std::vector<SectorMin> minima;
  std::vector<double> all_energies;
  for (int k = 0; k <= spec.n_sites; ++k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blocks.blocks[k]);
    for (long i = 0; i < es.eigenvalues().size(); ++i)
      all_energies.push_back(es.eigenvalues()[i]);
    minima.push_back(SectorMin{k, es.eigenvalues()[0], es.eigenvectors().col(0)});
  }

  double best_energy = minima[0].energy;
  for (const auto& m : minima) best_energy = std::min(best_energy, m.energy);
  // Tie-break: among sectors within 1e-10 of the minimum, the largest Sz
  // (smallest down-spin count) wins.
  const SectorMin* chosen = nullptr;
  for (const auto& m : minima)
    if (m.energy <= best_energy + 1e-10) {
      chosen = &m;
      break;
    }

  std::sort(all_energies.begin(), all_energies.end());
  double gap = all_energies.size() > 1 ? all_energies[1] - all_energies[0] : 0.0;

  long dim = 1L << spec.n_sites;
  Vector psi = Vector::Zero(dim);
  const auto& basis = blocks.basis_states[chosen->k];
  for (long i = 0; i < chosen->vec.size(); ++i)
    psi[basis[i]] = chosen->vec[i];
  fix_global_phase(psi);

  return GroundStateResult{
      QuantumState::from_pure(std::vector<int>(spec.n_sites, 2), psi),
      chosen->energy, gap, (spec.n_sites - 2.0 * chosen->k) / 2.0};
}

}  // namespace qcoh
