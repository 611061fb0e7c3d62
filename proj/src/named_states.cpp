#include "qcoh/named_states.hpp"

#include <cmath>
#include <stdexcept>

namespace qcoh {

namespace {

Vector zeros(long n) { return Vector::Zero(n); }

}  // namespace

QuantumState ghz_state(double phi) {
  Vector psi = zeros(8);
  psi[0] = std::cos(phi);
  psi[7] = std::sin(phi);
  fix_global_phase(psi);
  return QuantumState::from_pure({2, 2, 2}, psi);
}

QuantumState werner_ghz(double mu, double phi) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("werner_ghz: mu must lie in [0,1]");
  Matrix m = (1.0 - mu) / 8.0 * Matrix::Identity(8, 8) +
             mu * ghz_state(phi).matrix();
  return QuantumState::unchecked({2, 2, 2}, std::move(m));
}

QuantumState w_state(double theta, double phi) {
  Vector psi = zeros(8);
  psi[4] = std::sin(theta) * std::cos(phi);  // |100>
  psi[2] = std::sin(theta) * std::sin(phi);  // |010>
  psi[1] = std::cos(theta);                  // |001>
  fix_global_phase(psi);
  return QuantumState::from_pure({2, 2, 2}, psi);
}

QuantumState bell_state(int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("bell_state: sign must be +1 or -1");
  Vector psi = zeros(4);
  psi[0] = 1.0 / std::sqrt(2.0);
  psi[3] = sign / std::sqrt(2.0);
  return QuantumState::from_pure({2, 2}, psi);
}

QuantumState product_plus_state(int n_sites) {
  if (n_sites < 1)
    throw std::invalid_argument("product_plus_state: need at least one site");
  long n = 1L << n_sites;
  Vector psi(n);
  double amp = std::pow(std::sqrt(0.5), n_sites);
  for (long i = 0; i < n; ++i) {
    int bits = 0;
    for (long x = i; x; x >>= 1) bits += static_cast<int>(x & 1);
    psi[i] = (bits % 2 ? -amp : amp);
  }
  return QuantumState::from_pure(std::vector<int>(n_sites, 2), psi);
}

}  // namespace qcoh
