#include "qcoh/minimize.hpp"

#include "qcoh/detail/lbfgs.hpp"
#include "qcoh/detail/separable_problem.hpp"
#include "qcoh/qjsd.hpp"
#include "qcoh/random_states.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace qcoh {

namespace {

int resolve_restarts(const OptimOptions& opts, long dim) {
  if (opts.restarts > 0) return opts.restarts;
  return dim <= 64 ? 10 : 4;
}

int resolve_k(const OptimOptions& opts, const std::vector<long>& group_dims,
              long total_dim) {
  if (opts.k_override > 0) return opts.k_override;
  if (group_dims.size() == 2 && total_dim <= 16) return 4;
  if (group_dims.size() == 3 && group_dims[0] == 2 && group_dims[1] == 2 &&
      group_dims[2] == 2)
    return 8;
  return 16;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd p = (logits.array() - logits.maxCoeff()).exp();
  return p / p.sum();
}

Eigen::VectorXd dirichlet_logits(long n, Rng& rng) {
  std::exponential_distribution<double> ed(1.0);
  Eigen::VectorXd x(n);
  for (long i = 0; i < n; ++i) x[i] = ed(rng);
  x /= x.sum();
  return x.cwiseMax(1e-12).array().log();
}

struct RestartOutcome {
  detail::LbfgsResult run;
  int restart = 0;
};

// Keeps the lowest objective; ties go to the earlier restart.
void merge_best(std::optional<RestartOutcome>& best, detail::LbfgsResult run,
                int restart) {
  if (!best || run.f < best->run.f)
    best = RestartOutcome{std::move(run), restart};
}

}  // namespace

void OptimOptions::validate() const {
  if (restarts < 0) throw std::invalid_argument("restarts must be >= 1 (0 = auto)");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(objective_tolerance > 0.0))
    throw std::invalid_argument("objective_tolerance must be positive");
  if (k_override < 0) throw std::invalid_argument("ansatz size must be >= 1 (0 = auto)");
}

// ---------------------------------------------------------------------------
// closest_incoherent
// ---------------------------------------------------------------------------

MinimizationResult closest_incoherent(const QuantumState& rho,
                                      const BasisSpec& basis,
                                      const OptimOptions& opts) {
  opts.validate();
  if (basis.dims() != rho.dims())
    throw std::invalid_argument("closest_incoherent: basis dims do not match state");

  const long d = rho.dim();

  // Work in the frame where the reference basis is computational.
  Matrix u;
  Matrix rho_work;
  const bool rotated = !basis.is_computational();
  if (rotated) {
    u = basis.product_unitary();
    rho_work = u.adjoint() * rho.matrix() * u;
    rho_work = (rho_work + rho_work.adjoint()) / 2.0;
  } else {
    rho_work = rho.matrix();
  }

  if (max_abs(rho.matrix() - Matrix::Identity(d, d) / double(d)) <= 1e-12) {
    // Maximally mixed input is already incoherent in every basis.
    MinimizationResult out{maximally_mixed(rho.dims()), 0.0, 0, 0, true, {}};
    return out;
  }

  const double s_rho = detail::entropy_matrix(rho_work);
  auto objective = [&](const Eigen::VectorXd& logits) {
    Eigen::VectorXd p = softmax(logits);
    Matrix avg = rho_work / 2.0;
    avg.diagonal() += Complex(0.5, 0.0) * p.cast<Complex>();
    return detail::entropy_matrix(avg) -
           0.5 * (s_rho + entropy_of_spectrum(p));
  };

  // Quasi-Newton on finite-difference gradients; central differences on the
  // desk-scale problems, forward differences on the large (documented slow)
  // path.
  const double h = 1e-6;
  const bool central = d <= 64;
  detail::ObjectiveFn fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
    double f = objective(x);
    if (g) {
      g->resize(x.size());
      Eigen::VectorXd xp = x;
      for (long i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + h;
        double fp = objective(xp);
        if (central) {
          xp[i] = x[i] - h;
          (*g)[i] = (fp - objective(xp)) / (2.0 * h);
        } else {
          (*g)[i] = (fp - f) / h;
        }
        xp[i] = x[i];
      }
    }
    return f;
  };

  detail::LbfgsOptions lopts;
  lopts.max_iterations = opts.max_iterations;
  lopts.f_tolerance = opts.objective_tolerance;

  Eigen::VectorXd diag_logits =
      rho_work.diagonal().real().cwiseMax(1e-12).array().log();
  const double diag_candidate = objective(diag_logits);

  const int restarts = resolve_restarts(opts, d);
  std::optional<RestartOutcome> best;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd x0;
    if (r == 0) {
      x0 = diag_logits;
    } else {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
      x0 = dirichlet_logits(d, rng);
    }
    merge_best(best, detail::lbfgs_minimize(fg, std::move(x0), lopts), r);
  }

  if (diag_candidate - best->run.f > 1e-6)
    std::clog << "closest_incoherent: optimization improved on the diagonal "
                 "projection by "
              << diag_candidate - best->run.f << "\n";

  Eigen::VectorXd p = softmax(best->run.x);
  Matrix sigma = Matrix::Zero(d, d);
  sigma.diagonal() = p.cast<Complex>();
  if (rotated) sigma = u * sigma * u.adjoint();
  QuantumState minimizer = QuantumState::unchecked(rho.dims(), std::move(sigma));
  double objective_value = detail::qjsd_matrices(rho.matrix(), minimizer.matrix());
  return MinimizationResult{std::move(minimizer), objective_value,
                            best->run.iterations, best->restart,
                            best->run.converged, {}};
}

// ---------------------------------------------------------------------------
// closest_separable
// ---------------------------------------------------------------------------

namespace detail {

std::vector<std::vector<int>> full_split_partition(int n_sites) {
  std::vector<std::vector<int>> partition;
  for (int s = 1; s <= n_sites; ++s) partition.push_back({s});
  return partition;
}

}  // namespace detail

namespace {

void validate_partition(const std::vector<std::vector<int>>& partition,
                        int n_sites) {
  std::vector<int> seen(n_sites, 0);
  if (partition.size() < 2)
    throw std::invalid_argument("partition needs at least two groups");
  for (const auto& group : partition) {
    if (group.empty()) throw std::invalid_argument("partition group is empty");
    for (size_t i = 0; i < group.size(); ++i) {
      int s = group[i];
      if (s < 1 || s > n_sites)
        throw std::invalid_argument("partition site index out of range 1..N");
      if (i > 0 && s <= group[i - 1])
        throw std::invalid_argument("partition group sites must be strictly increasing");
      if (seen[s - 1]++)
        throw std::invalid_argument("partition covers a site twice");
    }
  }
  for (int s = 0; s < n_sites; ++s)
    if (!seen[s])
      throw std::invalid_argument("partition must cover all sites");
}

struct ProductTerm {
  double weight;
  std::vector<Vector> factors;
};

// Successive bipartite Schmidt splits of a group-major vector.
void schmidt_terms(const Vector& v, const std::vector<long>& group_dims,
                   size_t g0, double coeff, std::vector<Vector>& stack,
                   std::vector<ProductTerm>& out) {
  if (coeff < 1e-14) return;
  if (g0 + 1 == group_dims.size()) {
    ProductTerm term{coeff, stack};
    term.factors.push_back(v.normalized());
    out.push_back(std::move(term));
    return;
  }
  long rows = group_dims[g0];
  long cols = v.size() / rows;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      vm(v.data(), rows, cols);
  Eigen::JacobiSVD<Matrix> svd(vm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  for (long i = 0; i < svd.singularValues().size(); ++i) {
    double s = svd.singularValues()[i];
    if (s * s < 1e-14) continue;
    stack.push_back(svd.matrixU().col(i));
    Vector rest = svd.matrixV().col(i).conjugate();
    schmidt_terms(rest, group_dims, g0 + 1, coeff * s * s, stack, out);
    stack.pop_back();
  }
}

std::vector<Vector> random_factors(const std::vector<long>& group_dims, Rng& rng) {
  std::vector<Vector> f;
  f.reserve(group_dims.size());
  for (long dg : group_dims) f.push_back(random_amplitudes(dg, rng));
  return f;
}

// Decohered-Schmidt initialization: eigenvalue-weighted dominant product
// terms from the Schmidt splits of each eigenvector.
Eigen::VectorXd init_decohered_schmidt(const detail::SeparableProblem& prob,
                                       const Eigen::VectorXd& q, const Matrix& phi,
                                       Rng& rng) {
  std::vector<ProductTerm> terms;
  std::vector<Vector> stack;
  for (long l = 0; l < q.size(); ++l)
    schmidt_terms(phi.col(l), prob.group_dims(), 0, q[l], stack, terms);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const ProductTerm& a, const ProductTerm& b) {
                     return a.weight > b.weight;
                   });
  int k = prob.component_count();
  if (static_cast<int>(terms.size()) > k) terms.resize(k);
  while (static_cast<int>(terms.size()) < k)
    terms.push_back(ProductTerm{1e-8, random_factors(prob.group_dims(), rng)});
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  std::vector<double> weights;
  std::vector<std::vector<Vector>> factors;
  for (auto& t : terms) {
    weights.push_back(t.weight / total);
    factors.push_back(std::move(t.factors));
  }
  return prob.encode(weights, factors);
}

// Diagonal projection of rho expressed as a mixture of computational basis
// products (top-K entries).
Eigen::VectorXd init_diag_products(const detail::SeparableProblem& prob,
                                   const Matrix& rho_gm, Rng& rng) {
  const auto& gdims = prob.group_dims();
  long d = rho_gm.rows();
  Eigen::VectorXd diag = rho_gm.diagonal().real();
  std::vector<long> order(d);
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(),
                   [&](long a, long b) { return diag[a] > diag[b]; });
  int k = prob.component_count();
  std::vector<double> weights;
  std::vector<std::vector<Vector>> factors;
  for (int c = 0; c < k; ++c) {
    if (c < d) {
      long idx = order[c];
      weights.push_back(std::max(diag[idx], 1e-12));
      std::vector<Vector> f;
      long rem = idx;
      for (size_t g = 0; g < gdims.size(); ++g) {
        long block = 1;
        for (size_t g2 = g + 1; g2 < gdims.size(); ++g2) block *= gdims[g2];
        long digit = rem / block;
        rem %= block;
        Vector e = Vector::Zero(gdims[g]);
        e[digit] = 1.0;
        f.push_back(std::move(e));
      }
      factors.push_back(std::move(f));
    } else {
      weights.push_back(1e-8);
      factors.push_back(random_factors(gdims, rng));
    }
  }
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return prob.encode(weights, factors);
}

Eigen::VectorXd init_random(const detail::SeparableProblem& prob, Rng& rng) {
  int k = prob.component_count();
  std::vector<double> weights(k);
  std::exponential_distribution<double> ed(1.0);
  double total = 0.0;
  for (double& w : weights) total += (w = ed(rng));
  for (double& w : weights) w /= total;
  std::vector<std::vector<Vector>> factors;
  for (int c = 0; c < k; ++c) factors.push_back(random_factors(prob.group_dims(), rng));
  return prob.encode(weights, factors);
}

}  // namespace

QuantumState SeparableAnsatz::realize() const {
  long d = 1;
  for (int dd : dims) d *= dd;

  // Map group-major flat indices to site-order flat indices.
  std::vector<int> site_order;
  for (const auto& g : partition) site_order.insert(site_order.end(), g.begin(), g.end());
  const int n_sites = static_cast<int>(dims.size());
  std::vector<long> site_stride(n_sites, 1);
  for (int s = n_sites - 2; s >= 0; --s)
    site_stride[s] = site_stride[s + 1] * dims[s + 1];
  std::vector<long> gm_dims;
  for (int s : site_order) gm_dims.push_back(dims[s - 1]);
  std::vector<long> map(d, 0);
  for (long idx = 0; idx < d; ++idx) {
    long rem = idx, site_idx = 0;
    for (int i = 0; i < n_sites; ++i) {
      long block = 1;
      for (int l = i + 1; l < n_sites; ++l) block *= gm_dims[l];
      long digit = rem / block;
      rem %= block;
      site_idx += digit * site_stride[site_order[i] - 1];
    }
    map[idx] = site_idx;
  }

  Matrix sigma = Matrix::Zero(d, d);
  for (size_t k = 0; k < weights.size(); ++k) {
    Vector psi_gm = factors[k][0];
    for (size_t g = 1; g < factors[k].size(); ++g) {
      const Vector& z = factors[k][g];
      Vector next(psi_gm.size() * z.size());
      for (long i = 0; i < psi_gm.size(); ++i)
        next.segment(i * z.size(), z.size()) = psi_gm[i] * z;
      psi_gm = std::move(next);
    }
    Vector psi = Vector::Zero(d);
    for (long idx = 0; idx < d; ++idx) psi[map[idx]] = psi_gm[idx];
    sigma.noalias() += weights[k] * (psi * psi.adjoint());
  }
  return QuantumState::unchecked(dims, std::move(sigma));
}

MinimizationResult closest_separable(const QuantumState& rho,
                                     const std::vector<std::vector<int>>& partition,
                                     const OptimOptions& opts) {
  opts.validate();
  validate_partition(partition, rho.num_sites());

  const long d = rho.dim();
  std::vector<long> group_dims;
  std::vector<int> site_order;
  for (const auto& group : partition) {
    long dg = 1;
    for (int s : group) dg *= rho.dims()[s - 1];
    group_dims.push_back(dg);
    site_order.insert(site_order.end(), group.begin(), group.end());
  }

  bool identity_order = true;
  for (int i = 0; i < rho.num_sites(); ++i)
    if (site_order[i] != i + 1) identity_order = false;
  std::optional<QuantumState> permuted;
  if (!identity_order) permuted = permute_sites(rho, site_order);
  const QuantumState& rho_gm = permuted ? *permuted : rho;

  const int k = resolve_k(opts, group_dims, d);
  const int restarts = resolve_restarts(opts, d);

  if (max_abs(rho.matrix() - Matrix::Identity(d, d) / double(d)) <= 1e-12) {
    // I/d is the uniform mixture of basis products: feasible, distance zero.
    detail::SeparableProblem prob(Eigen::VectorXd::Ones(1),
                                  Matrix::Identity(d, 1), 0.0, group_dims,
                                  static_cast<int>(d));
    Rng rng(derive_seed(opts.seed, 0));
    Eigen::VectorXd params = init_diag_products(prob, rho_gm.matrix(), rng);
    std::vector<double> weights;
    std::vector<std::vector<Vector>> factors;
    prob.decode(params, weights, factors);
    SeparableAnsatz ansatz{rho.dims(), partition, std::move(weights),
                           std::move(factors)};
    return MinimizationResult{maximally_mixed(rho.dims()), 0.0, 0, 0, true,
                              std::move(ansatz)};
  }

  // Spectral form of rho in the group-major frame.
  Eigen::VectorXd q;
  Matrix phi;
  double s_rho = 0.0;
  if (rho_gm.pure_vector()) {
    q = Eigen::VectorXd::Ones(1);
    phi = *rho_gm.pure_vector();
  } else {
    SpectralDecomposition sd = spectral_decomposition(rho_gm);
    s_rho = entropy_of_spectrum(sd.eigenvalues);
    std::vector<long> keep;
    for (long i = sd.eigenvalues.size() - 1; i >= 0; --i)
      if (sd.eigenvalues[i] > 1e-14) keep.push_back(i);
    q.resize(static_cast<long>(keep.size()));
    phi.resize(d, static_cast<long>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i) {
      q[static_cast<long>(i)] = sd.eigenvalues[keep[i]];
      phi.col(static_cast<long>(i)) = sd.eigenvectors.col(keep[i]);
    }
  }

  detail::SeparableProblem prob(q, phi, s_rho, group_dims, k);

  detail::LbfgsOptions lopts;
  lopts.max_iterations = opts.max_iterations;
  lopts.f_tolerance = opts.objective_tolerance;

  detail::ObjectiveFn fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
    return prob.eval(x, g);
  };

  std::optional<RestartOutcome> best;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0;
    if (r == 0)
      x0 = init_decohered_schmidt(prob, q, phi, rng);
    else if (r == 1)
      x0 = init_diag_products(prob, rho_gm.matrix(), rng);
    else
      x0 = init_random(prob, rng);
    merge_best(best, detail::lbfgs_minimize(fg, std::move(x0), lopts), r);
  }

  std::vector<double> weights;
  std::vector<std::vector<Vector>> factors;
  prob.decode(best->run.x, weights, factors);
  for (auto& component : factors)
    for (Vector& z : component) fix_global_phase(z);
  SeparableAnsatz ansatz{rho.dims(), partition, std::move(weights),
                         std::move(factors)};
  QuantumState minimizer = ansatz.realize();
  double objective_value = std::max(best->run.f, 0.0);
  return MinimizationResult{std::move(minimizer), objective_value,
                            best->run.iterations, best->restart,
                            best->run.converged, std::move(ansatz)};
}

}  // namespace qcoh
