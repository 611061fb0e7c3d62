#include "qcoh/oracles.hpp"

#include "qcoh/qjsd.hpp"

#include <cmath>
#include <stdexcept>

namespace qcoh::oracles {

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

double bell_anchor_distance() {
  return std::sqrt(binary_entropy(0.75) - 0.5);
}

double qjsd_zero_plus() {
  double lo = (1.0 - 1.0 / std::sqrt(2.0)) / 2.0;
  return binary_entropy(lo);
}

namespace {

double diag_objective(const Matrix& rho, double s_rho,
                      const Eigen::VectorXd& p) {
  Matrix avg = rho / 2.0;
  avg.diagonal() += Complex(0.5, 0.0) * p.cast<Complex>();
  return detail::entropy_matrix(avg) - 0.5 * (s_rho + entropy_of_spectrum(p));
}

// Recursive scan over the simplex {p : sum = 1, p_i = k*step}.
void scan(const Matrix& rho, double s_rho, Eigen::VectorXd& p, long i,
          double remaining, double step, double& best) {
  long d = p.size();
  if (i == d - 1) {
    p[i] = remaining;
    best = std::min(best, diag_objective(rho, s_rho, p));
    return;
  }
  long steps = std::lround(remaining / step);
  for (long k = 0; k <= steps; ++k) {
    p[i] = k * step;
    scan(rho, s_rho, p, i + 1, remaining - k * step, step, best);
  }
}

}  // namespace

double incoherent_grid_scan(const QuantumState& rho, double step) {
  if (!(step > 0.0 && step < 1.0))
    throw std::invalid_argument("grid step must lie in (0,1)");
  long d = rho.dim();
  if (d > 8) throw std::invalid_argument("grid scan is practical for dim <= 8 only");
  double s_rho = detail::entropy_matrix(rho.matrix());
  Eigen::VectorXd p(d);
  double best = 1.0;
  scan(rho.matrix(), s_rho, p, 0, 1.0, step, best);
  return best;
}

double single_qubit_incoherent_scan(const QuantumState& rho, int points) {
  if (rho.dim() != 2)
    throw std::invalid_argument("single-qubit scan needs a qubit state");
  double s_rho = detail::entropy_matrix(rho.matrix());
  double best = 1.0;
  Eigen::VectorXd p(2);
  for (int k = 0; k <= points; ++k) {
    p[0] = static_cast<double>(k) / points;
    p[1] = 1.0 - p[0];
    best = std::min(best, diag_objective(rho.matrix(), s_rho, p));
  }
  return best;
}

}  // namespace qcoh::oracles
