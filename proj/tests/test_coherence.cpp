#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcoh/coherence.hpp"
#include "qcoh/named_states.hpp"
#include "qcoh/oracles.hpp"
#include "qcoh/qjsd.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/spin_models.hpp"

#include <cmath>

using namespace qcoh;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kBellC = 0.5579230452841438;
}  // namespace

TEST_CASE("total_coherence basics") {
  Matrix d = Matrix::Zero(4, 4);
  d(0, 0) = 0.7;
  d(3, 3) = 0.3;
  QuantumState incoherent({2, 2}, d);
  BasisSpec b2 = BasisSpec::computational({2, 2});
  TotalCoherence tc = total_coherence(incoherent, b2);
  CHECK(tc.c < 1e-5);
  CHECK(max_abs(tc.detail.minimizer.matrix() - incoherent.matrix()) < 1e-4);

  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  TotalCoherence tp = total_coherence(QuantumState::from_pure({2}, plus),
                                      BasisSpec::computational({2}));
  CHECK(std::abs(tp.c - kBellC) < 1e-5);
  CHECK(max_abs(tp.detail.minimizer.matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-4);

  TotalCoherence tb = total_coherence(bell_state(-1), b2);
  CHECK(std::abs(tb.c - kBellC) < 1e-5);
}

TEST_CASE("intrinsic_coherence basics") {
  Rng rng(21);
  QuantumState prod = tensor(random_pure_state({2}, rng), random_pure_state({2}, rng));
  IntrinsicCoherence ip = intrinsic_coherence(prod, {{1}, {2}});
  CHECK(ip.c < 1e-4);

  IntrinsicCoherence ib = intrinsic_coherence(bell_state(-1), {{1}, {2}});
  CHECK(std::abs(ib.c - kBellC) < 2e-3);

  for (double phi : {0.0, 0.9, kPi / 2, 2.5}) {
    IntrinsicCoherence iw = intrinsic_coherence(w_state(kPi / 4, phi), {{1, 2}, {3}});
    CHECK(std::abs(iw.c - kBellC) < 1e-3);
  }
}

TEST_CASE("local_coherence examples") {
  BasisSpec b2 = BasisSpec::computational({2, 2});

  Matrix d = Matrix::Zero(4, 4);
  d(0, 0) = 0.4;
  d(1, 1) = 0.6;
  CHECK(local_coherence(QuantumState({2, 2}, d), b2) < 1e-4);

  QuantumState minus2 = product_plus_state(2);
  double cl = local_coherence(minus2, b2);
  double ct = total_coherence(minus2, b2).c;
  double ci = intrinsic_coherence(minus2, {{1}, {2}}).c;
  CHECK(std::abs(cl - ct) < 2e-3);
  CHECK(ci < 1e-3);

  CHECK(local_coherence(bell_state(-1), b2) < 1e-3);
}

TEST_CASE("site_coherence examples") {
  BasisSpec b3 = BasisSpec::computational({2, 2, 2});
  QuantumState ghz = ghz_state(0.6);
  for (int s = 1; s <= 3; ++s) CHECK(site_coherence(ghz, s, b3) < 1e-6);

  BasisSpec b2 = BasisSpec::computational({2, 2});
  QuantumState minus2 = product_plus_state(2);
  for (int s = 1; s <= 2; ++s)
    CHECK(std::abs(site_coherence(minus2, s, b2) - kBellC) < 1e-5);

  // Sz conservation dephases every single-site reduction of an XXZ ground
  // state.
  GroundStateResult gs = ground_state(ModelSpec::xxz(6, 1.0, 0.8, Boundary::Periodic));
  BasisSpec b6 = BasisSpec::computational(std::vector<int>(6, 2));
  CHECK(site_coherence(gs.state, 1, b6) < 1e-6);
  CHECK(site_coherence(gs.state, 4, b6) < 1e-6);
}

TEST_CASE("pairwise_intrinsic examples") {
  for (double mu : {0.3, 0.8}) {
    QuantumState w = werner_ghz(mu, kPi / 4);
    CHECK(pairwise_intrinsic(w, 1, 2) < 1e-3);
    CHECK(pairwise_intrinsic(w, 2, 3) < 1e-3);
  }

  QuantumState w0 = w_state(kPi / 4, 0.0);
  CHECK(std::abs(pairwise_intrinsic(w0, 1, 3) - kBellC) < 2e-3);

  QuantumState w90 = w_state(kPi / 4, kPi / 2);
  CHECK(pairwise_intrinsic(w90, 1, 3) < 1e-3);

  CHECK_THROWS_AS(pairwise_intrinsic(w0, 2, 2), std::invalid_argument);
}

TEST_CASE("monogamy examples") {
  QuantumState ghz = ghz_state(kPi / 4);
  double m = monogamy(ghz);
  BasisSpec b3 = BasisSpec::computational({2, 2, 2});
  double c = total_coherence(ghz, b3).c;
  CHECK(std::abs(m + c) < 2e-3);

  for (double phi : {0.0, 0.8, 1.9, 3.0, 4.4, 5.6}) {
    CHECK(monogamy(w_state(kPi / 4, phi)) >= -1e-3);
  }
}

TEST_CASE("decomposition_report on maximally mixed states is all zero") {
  for (int n : {2, 3}) {
    std::vector<int> dims(n, 2);
    CoherenceReport rep = decomposition_report(maximally_mixed(dims),
                                               BasisSpec::computational(dims));
    CHECK(*rep.c_total < 1e-6);
    CHECK(*rep.c_local < 1e-6);
    CHECK(*rep.c_intrinsic < 1e-6);
    for (double c : rep.per_site) CHECK(c < 1e-6);
    for (const auto& [k, v] : rep.pairwise) CHECK(v < 1e-6);
    for (const auto& [k, v] : rep.bipartitions) CHECK(v < 1e-6);
    CHECK(std::abs(*rep.monogamy_m) < 1e-5);
    CHECK(rep.converged);
  }
}

TEST_CASE("report invariants on a mixed corpus") {
  Rng rng(33);
  std::vector<QuantumState> corpus;
  corpus.push_back(bell_state(-1));
  corpus.push_back(w_state(kPi / 4, 1.1));
  corpus.push_back(werner_ghz(0.6, kPi / 4));
  corpus.push_back(random_mixed_state({2, 2}, 2, rng));
  corpus.push_back(ground_state(ModelSpec::ising2(1.0, 1.2, 0.2)).state);

  for (const QuantumState& rho : corpus) {
    BasisSpec basis = BasisSpec::computational(rho.dims());
    CoherenceReport rep = decomposition_report(rho, basis);

    // triangle inequality for the found minimizers (Eq 6 as implemented)
    CHECK(*rep.slack_eq6 >= -1e-9);
    // product-state subadditivity diagnostic (Eq 7)
    CHECK(*rep.slack_eq7 >= -1e-6);

    auto in_range = [](double c) { return c >= 0.0 && c <= 1.0; };
    CHECK(in_range(*rep.c_total));
    CHECK(in_range(*rep.c_local));
    CHECK(in_range(*rep.c_intrinsic));
    for (double c : rep.per_site) CHECK(in_range(c));
    for (const auto& [k, v] : rep.pairwise) CHECK(in_range(v));
    for (const auto& [k, v] : rep.bipartitions) CHECK(in_range(v));

    // monogamy recomputes exactly from the stored fields
    if (rho.num_sites() >= 2) {
      double sum = 0.0;
      for (int n = 2; n <= rho.num_sites(); ++n) sum += rep.pairwise.at({1, n});
      CHECK(*rep.monogamy_m == sum - rep.bipartitions.at(1));
    }
    CHECK(*rep.full_split == *rep.c_intrinsic);
  }
}

TEST_CASE("tri_sums are reported for three sites") {
  QuantumState w = w_state(kPi / 4, 0.7);
  CoherenceReport rep = decomposition_report(w, BasisSpec::computational({2, 2, 2}));
  for (int l = 0; l < 3; ++l) {
    REQUIRE(rep.tri_sums[l].has_value());
    CHECK(*rep.tri_sums[l] >= 0.0);
  }
  CHECK(std::abs(*rep.tri_sums[0] - (rep.pairwise.at({2, 3}) + rep.bipartitions.at(1))) <
        1e-15);
}

TEST_CASE("request subsets populate exactly the requested fields") {
  QuantumState w = w_state(kPi / 4, 0.7);
  ReportRequest req = ReportRequest::monogamy_set();
  CoherenceReport rep =
      decomposition_report(w, BasisSpec::computational({2, 2, 2}), {}, req);
  CHECK(!rep.c_total.has_value());
  CHECK(!rep.c_local.has_value());
  CHECK(!rep.c_intrinsic.has_value());
  CHECK(rep.per_site.empty());
  CHECK(rep.monogamy_m.has_value());
  CHECK(rep.pairwise.count({1, 2}) == 1);
  CHECK(rep.pairwise.count({2, 3}) == 0);
  CHECK(rep.bipartitions.count(1) == 1);
  CHECK(!rep.slack_eq6.has_value());
  CHECK(!rep.tri_sums[0].has_value());
}

TEST_CASE("unitary basis covariance of the total coherence") {
  Rng rng(51);
  QuantumState rho = random_mixed_state({2, 2}, 0, rng);
  Matrix u1 = random_unitary(2, rng), u2 = random_unitary(2, rng);
  Matrix u(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) u.block(i * 2, j * 2, 2, 2) = u1(i, j) * u2;

  double c_comp = total_coherence(rho, BasisSpec::computational({2, 2})).c;
  QuantumState rotated = QuantumState::unchecked({2, 2}, u * rho.matrix() * u.adjoint());
  double c_rot = total_coherence(rotated, BasisSpec({u1, u2})).c;
  CHECK(std::abs(c_comp - c_rot) < 2e-3);
}

TEST_CASE("permutation equivariance of per-site and pairwise entries") {
  QuantumState w = w_state(kPi / 4, 0.9);
  QuantumState wp = permute_sites(w, {3, 1, 2});  // new site i = old perm[i]
  BasisSpec b3 = BasisSpec::computational({2, 2, 2});
  CoherenceReport a = decomposition_report(w, b3);
  CoherenceReport b = decomposition_report(wp, b3);

  std::vector<int> perm = {3, 1, 2};
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(b.per_site[i] - a.per_site[perm[i] - 1]) < 2e-3);

  auto old_pair = [&](int i, int j) {
    int oi = perm[i - 1], oj = perm[j - 1];
    return a.pairwise.at({std::min(oi, oj), std::max(oi, oj)});
  };
  for (const auto& [key, value] : b.pairwise)
    CHECK(std::abs(value - old_pair(key.first, key.second)) < 2e-3);
}

TEST_CASE("ising2 crossover between intrinsic and local coherence") {
  BasisSpec b2 = BasisSpec::computational({2, 2});
  QuantumState gs_small_j = ground_state(ModelSpec::ising2(1.0, 0.0, 0.01)).state;
  CoherenceReport low = decomposition_report(gs_small_j, b2);
  CHECK(*low.c_intrinsic >= 0.5);
  CHECK(*low.c_local <= 0.1);

  QuantumState gs_large_j = ground_state(ModelSpec::ising2(1.0, 3.0, 0.2)).state;
  CoherenceReport high = decomposition_report(gs_large_j, b2);
  CHECK(*high.c_local >= *high.c_intrinsic);
}
