#include "qcoh/detail/separable_problem.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace qcoh::detail {

namespace {

// Eigenvalues below this are treated as kernel when taking logs in the
// gradient; the objective itself uses exact 0 log 0 = 0.
constexpr double kLogFloor = 1e-12;

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd p = (logits.array() - logits.maxCoeff()).exp();
  return p / p.sum();
}

}  // namespace

SeparableProblem::SeparableProblem(Eigen::VectorXd q, Matrix phi, double s_rho,
                                   std::vector<long> group_dims, int k_components)
    : q_(std::move(q)),
      phi_(std::move(phi)),
      s_rho_(s_rho),
      group_dims_(std::move(group_dims)),
      k_(k_components) {
  n_groups_ = static_cast<int>(group_dims_.size());
  strides_.assign(n_groups_, 1);
  for (int g = n_groups_ - 2; g >= 0; --g)
    strides_[g] = strides_[g + 1] * group_dims_[g + 1];
  for (long d : group_dims_) dim_ *= d;
  if (phi_.rows() != dim_ || phi_.cols() != q_.size())
    throw std::invalid_argument("separable problem: eigensystem shape mismatch");
  long per_component = 0;
  for (long d : group_dims_) per_component += 2 * d;
  n_params_ = k_ + k_ * per_component;
}

Vector SeparableProblem::component_vector(const std::vector<Vector>& zhat) const {
  Vector psi = zhat[0];
  for (int g = 1; g < n_groups_; ++g) {
    Vector next(psi.size() * zhat[g].size());
    for (long i = 0; i < psi.size(); ++i)
      next.segment(i * zhat[g].size(), zhat[g].size()) = psi[i] * zhat[g];
    psi = std::move(next);
  }
  return psi;
}

Vector SeparableProblem::contract_phi_except(const Vector& phi,
                                             const std::vector<Vector>& zhat,
                                             int group) const {
  Vector e = Vector::Zero(group_dims_[group]);
  for (long idx = 0; idx < dim_; ++idx) {
    Complex w = phi[idx];
    if (w == Complex(0.0, 0.0)) continue;
    long dig_g = 0;
    for (int g = 0; g < n_groups_; ++g) {
      long digit = (idx / strides_[g]) % group_dims_[g];
      if (g == group)
        dig_g = digit;
      else
        w *= std::conj(zhat[g][digit]);
    }
    e[dig_g] += w;
  }
  return e;
}

Eigen::VectorXd SeparableProblem::encode(
    const std::vector<double>& weights,
    const std::vector<std::vector<Vector>>& factors) const {
  Eigen::VectorXd params(n_params_);
  for (int k = 0; k < k_; ++k)
    params[k] = std::log(std::max(weights[k], 1e-12));
  long pos = k_;
  for (int k = 0; k < k_; ++k)
    for (int g = 0; g < n_groups_; ++g)
      for (long i = 0; i < group_dims_[g]; ++i) {
        params[pos++] = factors[k][g][i].real();
        params[pos++] = factors[k][g][i].imag();
      }
  return params;
}

void SeparableProblem::decode(const Eigen::VectorXd& params,
                              std::vector<double>& weights,
                              std::vector<std::vector<Vector>>& factors) const {
  Eigen::VectorXd p = softmax(params.head(k_));
  weights.assign(p.data(), p.data() + k_);
  factors.assign(k_, {});
  long pos = k_;
  for (int k = 0; k < k_; ++k) {
    factors[k].resize(n_groups_);
    for (int g = 0; g < n_groups_; ++g) {
      Vector z(group_dims_[g]);
      for (long i = 0; i < group_dims_[g]; ++i) {
        z[i] = Complex(params[pos], params[pos + 1]);
        pos += 2;
      }
      double n = z.norm();
      if (n < 1e-12) {
        z.setZero();
        z[0] = 1.0;
      } else {
        z /= n;
      }
      factors[k][g] = std::move(z);
    }
  }
}

double SeparableProblem::eval(const Eigen::VectorXd& params,
                              Eigen::VectorXd* grad) const {
  const int r = static_cast<int>(q_.size());
  const int k = k_;
  const int m = n_groups_;

  Eigen::VectorXd p = softmax(params.head(k));

  // Normalized factors and their norms (norms feed the gradient).
  std::vector<std::vector<Vector>> zhat(k, std::vector<Vector>(m));
  std::vector<std::vector<double>> znorm(k, std::vector<double>(m, 1.0));
  {
    long pos = k;
    for (int kk = 0; kk < k; ++kk)
      for (int g = 0; g < m; ++g) {
        Vector z(group_dims_[g]);
        for (long i = 0; i < group_dims_[g]; ++i) {
          z[i] = Complex(params[pos], params[pos + 1]);
          pos += 2;
        }
        double n = z.norm();
        if (n < 1e-12) {
          z.setZero();
          z[0] = 1.0;
          n = 1.0;
        } else {
          z /= n;
        }
        zhat[kk][g] = std::move(z);
        znorm[kk][g] = n;
      }
  }

  // Component vectors and inner products.
  Matrix psi(dim_, k);
  for (int kk = 0; kk < k; ++kk) psi.col(kk) = component_vector(zhat[kk]);

  // fip[g](j,kk) = <zhat_j_g | zhat_kk_g>
  std::vector<Matrix> fip(m, Matrix(k, k));
  for (int g = 0; g < m; ++g)
    for (int j = 0; j < k; ++j)
      for (int kk = 0; kk < k; ++kk) fip[g](j, kk) = zhat[j][g].dot(zhat[kk][g]);

  Matrix pmat = Matrix::Ones(k, k);  // <Psi_j|Psi_kk>
  for (int g = 0; g < m; ++g) pmat = pmat.cwiseProduct(fip[g]);

  Matrix cmat = phi_.adjoint() * psi;  // <phi_l|Psi_kk>, r x k

  Eigen::VectorXd sp = p.cwiseSqrt();
  Eigen::VectorXd sq = (q_ / 2.0).cwiseSqrt();

  Matrix gram_sigma(k, k);
  for (int j = 0; j < k; ++j)
    for (int kk = 0; kk < k; ++kk)
      gram_sigma(j, kk) = sp[j] * sp[kk] * pmat(j, kk);

  Matrix gram_m(r + k, r + k);
  gram_m.topLeftCorner(r, r) = (q_ / 2.0).asDiagonal();
  for (int l = 0; l < r; ++l)
    for (int kk = 0; kk < k; ++kk)
      gram_m(l, r + kk) = sq[l] * (sp[kk] / std::sqrt(2.0)) * cmat(l, kk);
  gram_m.bottomLeftCorner(k, r) = gram_m.topRightCorner(r, k).adjoint();
  gram_m.bottomRightCorner(k, k) = gram_sigma / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es_sigma(
      gram_sigma, grad ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> es_m(
      gram_m, grad ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);

  Eigen::VectorXd ls = es_sigma.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd lm = es_m.eigenvalues().cwiseMax(0.0);
  double j_val = entropy_of_spectrum(lm) -
                 0.5 * (s_rho_ + entropy_of_spectrum(ls));

  if (!grad) return j_val;

  // ---- analytic gradient ----
  // G = 1/2 (log2~ sigma - log2~ M), spectra floored at kLogFloor; both
  // low-rank:  G = Σ_i a_i u_i u_i†  -  Σ_j b_j v_j v_j†  with
  //   u_i = Σ_kk A(kk,i) Psi_kk,
  //   v_j = Σ_l  B(l,j) phi_l + Σ_kk Cc(kk,j) Psi_kk.
  std::vector<double> alpha, beta;
  Matrix acoef(k, 0), bcoef(r, 0), ccoef(k, 0);
  {
    std::vector<int> act;
    for (int i = 0; i < k; ++i)
      if (ls[i] > kLogFloor) act.push_back(i);
    acoef.resize(k, static_cast<long>(act.size()));
    for (size_t t = 0; t < act.size(); ++t) {
      int i = act[t];
      alpha.push_back(0.5 * std::log2(ls[i] / kLogFloor));
      double inv = 1.0 / std::sqrt(ls[i]);
      for (int kk = 0; kk < k; ++kk)
        acoef(kk, static_cast<long>(t)) = sp[kk] * es_sigma.eigenvectors()(kk, i) * inv;
    }
    act.clear();
    for (int i = 0; i < r + k; ++i)
      if (lm[i] > kLogFloor) act.push_back(i);
    bcoef.resize(r, static_cast<long>(act.size()));
    ccoef.resize(k, static_cast<long>(act.size()));
    for (size_t t = 0; t < act.size(); ++t) {
      int i = act[t];
      beta.push_back(0.5 * std::log2(lm[i] / kLogFloor));
      double inv = 1.0 / std::sqrt(lm[i]);
      for (int l = 0; l < r; ++l)
        bcoef(l, static_cast<long>(t)) = sq[l] * es_m.eigenvectors()(l, i) * inv;
      for (int kk = 0; kk < k; ++kk)
        ccoef(kk, static_cast<long>(t)) =
            (sp[kk] / std::sqrt(2.0)) * es_m.eigenvectors()(r + kk, i) * inv;
    }
  }
  const long na = acoef.cols(), nb = bcoef.cols();

  // t(i,kk) = <u_i|Psi_kk>, s(j,kk) = <v_j|Psi_kk>
  Matrix tmat = acoef.adjoint() * pmat;                       // na x k
  Matrix smat = bcoef.adjoint() * cmat + ccoef.adjoint() * pmat;  // nb x k

  // m_kk = <Psi_kk|G|Psi_kk>
  Eigen::VectorXd mval(k);
  for (int kk = 0; kk < k; ++kk) {
    double acc = 0.0;
    for (long i = 0; i < na; ++i) acc += alpha[i] * std::norm(tmat(i, kk));
    for (long j = 0; j < nb; ++j) acc -= beta[j] * std::norm(smat(j, kk));
    mval[kk] = acc;
  }

  // h_kk = G Psi_kk = Σ_k' gamma(kk,k') Psi_k' + Σ_l delta(kk,l) phi_l
  Matrix gamma = Matrix::Zero(k, k), delta = Matrix::Zero(k, r);
  for (int kk = 0; kk < k; ++kk) {
    for (int k2 = 0; k2 < k; ++k2) {
      Complex acc(0.0, 0.0);
      for (long i = 0; i < na; ++i) acc += alpha[i] * acoef(k2, i) * tmat(i, kk);
      for (long j = 0; j < nb; ++j) acc -= beta[j] * ccoef(k2, j) * smat(j, kk);
      gamma(kk, k2) = acc;
    }
    for (int l = 0; l < r; ++l) {
      Complex acc(0.0, 0.0);
      for (long j = 0; j < nb; ++j) acc -= beta[j] * bcoef(l, j) * smat(j, kk);
      delta(kk, l) = acc;
    }
  }

  grad->setZero(n_params_);
  // Weight logits: dJ/dalpha_k = p_k (m_k - Σ p_j m_j).
  double mbar = p.dot(mval);
  for (int kk = 0; kk < k; ++kk) (*grad)[kk] = p[kk] * (mval[kk] - mbar);

  // Factor entries.
  long pos = k;
  for (int kk = 0; kk < k; ++kk) {
    for (int g = 0; g < m; ++g) {
      long dg = group_dims_[g];
      // e = contraction of h_kk against this component's other factors.
      Vector e = Vector::Zero(dg);
      for (int k2 = 0; k2 < k; ++k2) {
        Complex w = gamma(kk, k2);
        if (w == Complex(0.0, 0.0)) continue;
        for (int g2 = 0; g2 < m; ++g2)
          if (g2 != g) w *= fip[g2](kk, k2);
        e += w * zhat[k2][g];
      }
      for (int l = 0; l < r; ++l) {
        if (delta(kk, l) == Complex(0.0, 0.0)) continue;
        e += delta(kk, l) * contract_phi_except(phi_.col(l), zhat[kk], g);
      }
      double re_e_psi = e.dot(zhat[kk][g]).real();
      double scale = 2.0 * p[kk] / znorm[kk][g];
      for (long i = 0; i < dg; ++i) {
        (*grad)[pos++] =
            scale * (e[i].real() - re_e_psi * zhat[kk][g][i].real());
        (*grad)[pos++] =
            scale * (e[i].imag() - re_e_psi * zhat[kk][g][i].imag());
      }
    }
  }
  return j_val;
}

}  // namespace qcoh::detail
