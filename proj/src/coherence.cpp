#include "qcoh/coherence.hpp"

#include "qcoh/qjsd.hpp"
#include "qcoh/random_states.hpp"

#include <cmath>
#include <stdexcept>

namespace qcoh {

namespace {

// Sub-minimizations of one report run under seeds derived from fixed task
// tags, so the same quantity gets the same stream no matter which subset is
// requested or in which order tasks run.
constexpr std::uint64_t kTagTotal = 1;
constexpr std::uint64_t kTagFullSplit = 2;

std::uint64_t tag_site(int n) { return 100 + static_cast<std::uint64_t>(n); }
std::uint64_t tag_bipart(int lead) { return 500 + static_cast<std::uint64_t>(lead); }
std::uint64_t tag_pair(int m, int n) {
  return 1000 + 16 * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n);
}

OptimOptions with_seed(const OptimOptions& opts, std::uint64_t tag) {
  OptimOptions out = opts;
  out.seed = derive_seed(opts.seed, tag);
  return out;
}

std::vector<std::vector<int>> lead_vs_rest_partition(int lead, int n_sites) {
  std::vector<int> rest;
  for (int s = 1; s <= n_sites; ++s)
    if (s != lead) rest.push_back(s);
  return {{lead}, rest};
}

}  // namespace

TotalCoherence total_coherence(const QuantumState& rho, const BasisSpec& basis,
                               const OptimOptions& opts) {
  MinimizationResult res = closest_incoherent(rho, basis, with_seed(opts, kTagTotal));
  return TotalCoherence{std::sqrt(res.objective), std::move(res)};
}

IntrinsicCoherence intrinsic_coherence(const QuantumState& rho,
                                       const std::vector<std::vector<int>>& partition,
                                       const OptimOptions& opts) {
  // The full split gets the report's tag so standalone and report values
  // coincide; other partitions get a tag from their lead group.
  std::uint64_t tag = kTagFullSplit;
  if (partition.size() == 2) {
    int lead = partition[0].size() == 1 ? partition[0][0]
               : partition[1].size() == 1 ? partition[1][0]
                                          : 0;
    if (lead > 0 && rho.num_sites() > 2) tag = tag_bipart(lead);
  }
  MinimizationResult res = closest_separable(rho, partition, with_seed(opts, tag));
  return IntrinsicCoherence{std::sqrt(res.objective), std::move(res)};
}

double local_coherence(const QuantumState& rho, const BasisSpec& basis,
                       const OptimOptions& opts) {
  MinimizationResult inc = closest_incoherent(rho, basis, with_seed(opts, kTagTotal));
  MinimizationResult sep = closest_separable(
      rho, detail::full_split_partition(rho.num_sites()), with_seed(opts, kTagFullSplit));
  return qjsd_distance(sep.minimizer, inc.minimizer);
}

double site_coherence(const QuantumState& rho, int site, const BasisSpec& basis,
                      const OptimOptions& opts) {
  if (site < 1 || site > rho.num_sites())
    throw std::invalid_argument("site_coherence: site out of range");
  QuantumState reduced = partial_trace(rho, {site});
  MinimizationResult res = closest_incoherent(reduced, basis.restricted({site}),
                                              with_seed(opts, tag_site(site)));
  return std::sqrt(res.objective);
}

double pairwise_intrinsic(const QuantumState& rho, int m, int n,
                          const OptimOptions& opts) {
  if (m == n) throw std::invalid_argument("pairwise_intrinsic: sites must differ");
  int a = std::min(m, n), b = std::max(m, n);
  if (a < 1 || b > rho.num_sites())
    throw std::invalid_argument("pairwise_intrinsic: site out of range");
  QuantumState reduced = partial_trace(rho, {a, b});
  MinimizationResult res =
      closest_separable(reduced, {{1}, {2}}, with_seed(opts, tag_pair(a, b)));
  return std::sqrt(res.objective);
}

double monogamy(const QuantumState& rho, const OptimOptions& opts) {
  const int n_sites = rho.num_sites();
  if (n_sites < 2) throw std::invalid_argument("monogamy: need at least two sites");
  double sum = 0.0;
  for (int n = 2; n <= n_sites; ++n) sum += pairwise_intrinsic(rho, 1, n, opts);
  MinimizationResult res = closest_separable(
      rho, lead_vs_rest_partition(1, n_sites), with_seed(opts, tag_bipart(1)));
  return sum - std::sqrt(res.objective);
}

ReportRequest ReportRequest::all() {
  ReportRequest r;
  r.outputs = {Quantity::CTotal,  Quantity::CLocal,       Quantity::CIntrinsic,
               Quantity::PerSite, Quantity::Pairwise,     Quantity::Bipartitions,
               Quantity::Monogamy};
  return r;
}

ReportRequest ReportRequest::monogamy_set() {
  ReportRequest r;
  r.outputs = {Quantity::Pairwise, Quantity::Bipartitions, Quantity::Monogamy};
  r.pairwise_first_site_only = true;
  return r;
}

CoherenceReport decomposition_report(const QuantumState& rho,
                                     const BasisSpec& basis,
                                     const OptimOptions& opts,
                                     const ReportRequest& request) {
  if (basis.dims() != rho.dims())
    throw std::invalid_argument("decomposition_report: basis dims do not match state");
  const int n_sites = rho.num_sites();
  const auto& want = request.outputs;
  auto wanted = [&](Quantity q) { return want.count(q) > 0; };

  CoherenceReport rep;
  rep.n_sites = n_sites;

  const bool need_total = wanted(Quantity::CTotal) || wanted(Quantity::CLocal);
  const bool need_intrinsic = wanted(Quantity::CIntrinsic) || wanted(Quantity::CLocal);

  std::optional<MinimizationResult> inc, sep;
  if (need_total) {
    inc = closest_incoherent(rho, basis, with_seed(opts, kTagTotal));
    rep.converged = rep.converged && inc->converged;
    if (wanted(Quantity::CTotal)) rep.c_total = std::sqrt(inc->objective);
  }
  if (need_intrinsic) {
    sep = closest_separable(rho, detail::full_split_partition(n_sites),
                            with_seed(opts, kTagFullSplit));
    rep.converged = rep.converged && sep->converged;
    if (wanted(Quantity::CIntrinsic)) {
      rep.c_intrinsic = std::sqrt(sep->objective);
      rep.full_split = rep.c_intrinsic;
    }
  }
  if (wanted(Quantity::CLocal))
    rep.c_local = qjsd_distance(sep->minimizer, inc->minimizer);

  if (wanted(Quantity::PerSite)) {
    rep.per_site.resize(n_sites);
    for (int s = 1; s <= n_sites; ++s) {
      QuantumState reduced = partial_trace(rho, {s});
      MinimizationResult r = closest_incoherent(reduced, basis.restricted({s}),
                                                with_seed(opts, tag_site(s)));
      rep.converged = rep.converged && r.converged;
      rep.per_site[s - 1] = std::sqrt(r.objective);
    }
  }

  // Pairwise coherences: the published set, plus the (1,n) row whenever the
  // monogamy score needs it.
  auto pair_value = [&](int m, int n) {
    QuantumState reduced = partial_trace(rho, {m, n});
    MinimizationResult r = closest_separable(reduced, {{1}, {2}},
                                             with_seed(opts, tag_pair(m, n)));
    rep.converged = rep.converged && r.converged;
    return std::sqrt(r.objective);
  };
  if (wanted(Quantity::Pairwise)) {
    for (int m = 1; m < n_sites; ++m) {
      if (request.pairwise_first_site_only && m != 1) break;
      for (int n = m + 1; n <= n_sites; ++n)
        rep.pairwise[{m, n}] = pair_value(m, n);
    }
  }
  std::vector<double> first_row(n_sites + 1, 0.0);
  if (wanted(Quantity::Monogamy)) {
    for (int n = 2; n <= n_sites; ++n) {
      auto it = rep.pairwise.find({1, n});
      first_row[n] = it != rep.pairwise.end() ? it->second : pair_value(1, n);
    }
  }

  // Bipartitions: always the 1:rest split; for N = 3 every lead (those are
  // the three bipartite decompositions of Eq-11 style diagnostics).
  std::optional<double> bipart_1;
  if (wanted(Quantity::Bipartitions) || wanted(Quantity::Monogamy)) {
    std::vector<int> leads = {1};
    if (wanted(Quantity::Bipartitions) && n_sites == 3) leads = {1, 2, 3};
    for (int lead : leads) {
      MinimizationResult r =
          closest_separable(rho, lead_vs_rest_partition(lead, n_sites),
                            with_seed(opts, tag_bipart(lead)));
      rep.converged = rep.converged && r.converged;
      double value = std::sqrt(r.objective);
      if (lead == 1) bipart_1 = value;
      if (wanted(Quantity::Bipartitions)) rep.bipartitions[lead] = value;
    }
  }
  if (wanted(Quantity::Monogamy)) {
    double sum = 0.0;
    for (int n = 2; n <= n_sites; ++n) sum += first_row[n];
    rep.monogamy_m = sum - *bipart_1;
  }

  if (rep.c_total && rep.c_intrinsic && rep.c_local)
    rep.slack_eq6 = *rep.c_local + *rep.c_intrinsic - *rep.c_total;
  if (rep.c_total && rep.c_intrinsic && !rep.per_site.empty()) {
    double sum = 0.0;
    for (double c : rep.per_site) sum += c;
    rep.slack_eq7 = sum + *rep.c_intrinsic - *rep.c_total;
  }

  if (n_sites == 3 && wanted(Quantity::Pairwise) && wanted(Quantity::Bipartitions) &&
      !request.pairwise_first_site_only) {
    // lead l pairs with the coherence of the remaining two sites.
    rep.tri_sums[0] = rep.pairwise.at({2, 3}) + rep.bipartitions.at(1);
    rep.tri_sums[1] = rep.pairwise.at({1, 3}) + rep.bipartitions.at(2);
    rep.tri_sums[2] = rep.pairwise.at({1, 2}) + rep.bipartitions.at(3);
  }
  return rep;
}

}  // namespace qcoh
