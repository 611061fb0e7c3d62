#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcoh/named_states.hpp"
#include "qcoh/spin_models.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>

using namespace qcoh;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Dense XXZ construction straight from the Pauli definition; the independent
// route the sector-blocked build is checked against.
Matrix xxz_dense_reference(int n, double j, double delta, Boundary boundary) {
  long dim = 1L << n;
  Matrix h = Matrix::Zero(dim, dim);
  std::vector<std::pair<int, int>> bonds;
  if (boundary == Boundary::Periodic)
    for (int s = 1; s <= n; ++s) bonds.emplace_back(s, s % n + 1);
  else
    for (int s = 1; s < n; ++s) bonds.emplace_back(s, s + 1);
  for (auto [a, b] : bonds) {
    for (int term = 0; term < 3; ++term) {
      Matrix op = term == 0 ? sigma_x() : term == 1 ? sigma_y() : sigma_z();
      double coef = term == 2 ? j * delta : j;
      Matrix acc = Matrix::Identity(1, 1);
      for (int s = 1; s <= n; ++s)
        acc = kron(acc, (s == a || s == b) ? op : Matrix::Identity(2, 2));
      h += coef * acc;
    }
  }
  return h;
}

Eigen::VectorXd sorted_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("build_ising2 matches the three reference assemblies") {
  Eigen::VectorXd ev = sorted_eigenvalues(build_ising2(1.0, 0.0, 0.0));
  CHECK(std::abs(ev[0] + 1.0) < 1e-12);
  CHECK(std::abs(ev[1] + 1.0) < 1e-12);
  CHECK(std::abs(ev[2] - 1.0) < 1e-12);
  CHECK(std::abs(ev[3] - 1.0) < 1e-12);

  ev = sorted_eigenvalues(build_ising2(0.0, 1.0, 0.0));
  CHECK(std::abs(ev[0] + 2.0) < 1e-12);
  CHECK(std::abs(ev[1]) < 1e-12);
  CHECK(std::abs(ev[2]) < 1e-12);
  CHECK(std::abs(ev[3] - 2.0) < 1e-12);

  Matrix h = build_ising2(1.0, 0.0, 0.2);
  CHECK(std::abs(h(0, 0) - Complex(0.4, 0)) < 1e-15);
  CHECK(std::abs(h(1, 1)) < 1e-15);
  CHECK(std::abs(h(2, 2)) < 1e-15);
  CHECK(std::abs(h(3, 3) - Complex(-0.4, 0)) < 1e-15);
  CHECK(std::abs(h(0, 3) - Complex(1.0, 0)) < 1e-15);
  CHECK(std::abs(h(1, 2) - Complex(1.0, 0)) < 1e-15);
  CHECK(max_abs(h - h.transpose()) < 1e-15);
}

TEST_CASE("ising2 ground states at the two limits") {
  GroundStateResult near_bell = ground_state(ModelSpec::ising2(1.0, 0.0, 0.01));
  Matrix diff = near_bell.state.matrix() - bell_state(-1).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  double trace_distance = 0.5 * es.eigenvalues().cwiseAbs().sum();
  CHECK(trace_distance < 0.05);
  CHECK(near_bell.degeneracy_gap > 0.0);

  GroundStateResult product = ground_state(ModelSpec::ising2(0.0, 1.0, 0.0));
  CHECK(max_abs(product.state.matrix() - product_plus_state(2).matrix()) < 1e-9);
  CHECK(std::abs(product.energy + 2.0) < 1e-12);
}

TEST_CASE("two-site XXZ spectra") {
  XxzBlocks heis = build_xxz(2, 1.0, 1.0, Boundary::Open);
  Eigen::VectorXd ev = sorted_eigenvalues(heis.to_dense());
  CHECK(std::abs(ev[0] + 3.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i] - 1.0) < 1e-12);

  XxzBlocks xx = build_xxz(2, 1.0, 0.0, Boundary::Open);
  ev = sorted_eigenvalues(xx.to_dense());
  CHECK(std::abs(ev[0] + 2.0) < 1e-12);
  CHECK(std::abs(ev[3] - 2.0) < 1e-12);
}

TEST_CASE("polarized sector holds the single aligned state") {
  for (auto boundary : {Boundary::Periodic, Boundary::Open}) {
    int n = 5;
    double j = 0.8, delta = -1.7;
    XxzBlocks blocks = build_xxz(n, j, delta, boundary);
    REQUIRE(blocks.basis_states[0].size() == 1);
    int bonds = boundary == Boundary::Periodic ? n : n - 1;
    CHECK(std::abs(blocks.blocks[0](0, 0) - j * delta * bonds) < 1e-12);
  }
}

TEST_CASE("sector-blocked XXZ equals the dense reference and commutes with Sz") {
  for (int n : {4, 5}) {
    for (auto boundary : {Boundary::Periodic, Boundary::Open}) {
      XxzBlocks blocks = build_xxz(n, 1.0, 0.7, boundary);
      Matrix dense = xxz_dense_reference(n, 1.0, 0.7, boundary);
      CHECK(max_abs(blocks.to_dense() - dense) < 1e-12);

      long dim = 1L << n;
      Matrix sz = Matrix::Zero(dim, dim);
      for (long b = 0; b < dim; ++b)
        sz(b, b) = (n - 2.0 * std::popcount(static_cast<unsigned long>(b))) / 2.0;
      CHECK(max_abs(dense * sz - sz * dense) < 1e-12);
    }
  }
}

TEST_CASE("sector solve reproduces the dense ground energy up to N=8") {
  for (int n : {4, 6, 8}) {
    for (double delta : {-1.5, 0.3, 2.5}) {
      ModelSpec spec = ModelSpec::xxz(n, 1.0, delta, Boundary::Periodic);
      GroundStateResult gs = ground_state(spec);
      Eigen::VectorXd ev =
          sorted_eigenvalues(xxz_dense_reference(n, 1.0, delta, Boundary::Periodic));
      CHECK(std::abs(gs.energy - ev[0]) < 1e-9);
    }
  }
}

TEST_CASE("ground states are pure and deterministic") {
  ModelSpec spec = ModelSpec::xxz(6, 1.0, 1.0, Boundary::Periodic);
  GroundStateResult a = ground_state(spec);
  GroundStateResult b = ground_state(spec);
  CHECK(max_abs(a.state.matrix() - b.state.matrix()) == 0.0);
  // rank-1 via purity
  double purity = (a.state.matrix() * a.state.matrix()).trace().real();
  CHECK(std::abs(purity - 1.0) < 1e-9);
  CHECK(a.sector_sz.has_value());
}

TEST_CASE("ferromagnetic tie-break picks the aligned Sz = +N/2 state") {
  GroundStateResult gs = ground_state(ModelSpec::xxz(6, 1.0, -2.0, Boundary::Periodic));
  CHECK(gs.sector_sz.has_value());
  CHECK(*gs.sector_sz == doctest::Approx(3.0));
  CHECK(std::abs(gs.state.matrix()(0, 0).real() - 1.0) < 1e-12);
  CHECK(std::abs(gs.energy - 1.0 * (-2.0) * 6) < 1e-12);
}

TEST_CASE("large-anisotropy XXZ ground state lives in the Neel subspace") {
  GroundStateResult gs = ground_state(ModelSpec::xxz(10, 1.0, 10.0, Boundary::Periodic));
  long neel_a = 0b0101010101, neel_b = 0b1010101010;
  double weight = gs.state.matrix()(neel_a, neel_a).real() +
                  gs.state.matrix()(neel_b, neel_b).real();
  CHECK(weight >= 0.97);
  CHECK(*gs.sector_sz == doctest::Approx(0.0));
  // The cat pair is nearly degenerate: the next level is close but resolved.
  CHECK(gs.degeneracy_gap > 1e-6);
  CHECK(gs.degeneracy_gap < 0.05);
}

TEST_CASE("ground energy is continuous in delta") {
  double prev = 0.0;
  bool have_prev = false;
  int n = 8;
  for (double delta = -2.0; delta <= 6.01; delta += 0.5) {
    GroundStateResult gs = ground_state(ModelSpec::xxz(n, 1.0, delta, Boundary::Periodic));
    if (have_prev) {
      // |dE/d delta| <= J * (number of bonds) for the ground level.
      CHECK(std::abs(gs.energy - prev) <= 1.0 * n * 0.5 + 1e-9);
    }
    prev = gs.energy;
    have_prev = true;
  }
}

TEST_CASE("model validation") {
  ModelSpec bad = ModelSpec::ising2(1.0, 0.0, 0.0);
  bad.n_sites = 3;
  CHECK_THROWS_AS(ground_state(bad), std::invalid_argument);
  CHECK_THROWS_AS(build_xxz(1, 1.0, 1.0, Boundary::Open), std::invalid_argument);
  CHECK_THROWS_AS(build_xxz(15, 1.0, 1.0, Boundary::Open), std::length_error);
  ModelSpec inf = ModelSpec::xxz(4, 1.0, std::numeric_limits<double>::infinity(),
                                 Boundary::Open);
  CHECK_THROWS_AS(ground_state(inf), std::invalid_argument);
}
