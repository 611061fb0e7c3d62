// coherence.hpp — total, intrinsic, local, per-site, pairwise and bipartition
// coherences, the monogamy score, and the assembled report.
//
// Every value is a square-root-QJSD distance to a variationally found
// minimizer, so each is an upper bound on the true minimum; the inequality
// diagnostics are phrased to hold for the found minimizers.

#pragma once

#include "qcoh/basis.hpp"
#include "qcoh/minimize.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace qcoh {

struct TotalCoherence {
  double c = 0.0;              // sqrt of the objective
  MinimizationResult detail;   // detail.minimizer is rho_d
};

struct IntrinsicCoherence {
  double c = 0.0;
  MinimizationResult detail;   // detail.minimizer is sigma_S^min
};

/// Distance to the closest incoherent state in the product basis.
TotalCoherence total_coherence(const QuantumState& rho, const BasisSpec& basis,
                               const OptimOptions& opts = {});

/// Distance to the closest separable state over the partition.
IntrinsicCoherence intrinsic_coherence(const QuantumState& rho,
                                       const std::vector<std::vector<int>>& partition,
                                       const OptimOptions& opts = {});

/// D(sigma_S^min, rho_d) between the two minimizers of the same state, both
/// computed here with the same seeds the report uses.
double local_coherence(const QuantumState& rho, const BasisSpec& basis,
                       const OptimOptions& opts = {});

/// Total coherence of the reduced state on site n, in the restricted basis.
double site_coherence(const QuantumState& rho, int site, const BasisSpec& basis,
                      const OptimOptions& opts = {});

/// Intrinsic coherence of the reduced state on sites {m, n}.
double pairwise_intrinsic(const QuantumState& rho, int m, int n,
                          const OptimOptions& opts = {});

/// M = sum_{n>=2} C_{1:n} - C_{1:2..N}; monogamous when M <= 0.
double monogamy(const QuantumState& rho, const OptimOptions& opts = {});

// ------------------------------- reports ------------------------------------

enum class Quantity {
  CTotal,
  CLocal,
  CIntrinsic,
  PerSite,
  Pairwise,
  Bipartitions,
  Monogamy,
};

struct ReportRequest {
  std::set<Quantity> outputs;
  /// Restrict pairwise entries to (1, n); the XXZ sweep default.
  bool pairwise_first_site_only = false;

  static ReportRequest all();
  /// pairwise (1,n) + the 1:rest bipartition + monogamy.
  static ReportRequest monogamy_set();
};

struct CoherenceReport {
  int n_sites = 0;
  std::optional<double> c_total;
  std::optional<double> c_local;
  std::optional<double> c_intrinsic;  // full-split intrinsic coherence
  std::optional<double> full_split;   // same quantity, kept as its own field
  std::vector<double> per_site;       // C_n, size N when requested
  std::map<std::pair<int, int>, double> pairwise;  // (m,n) with m < n
  std::map<int, double> bipartitions;  // lead site l -> C_{l:rest}
  std::optional<double> monogamy_m;
  std::optional<double> slack_eq6;  // C_L + C_I - C
  std::optional<double> slack_eq7;  // sum_n C_n + C_I - C
  // N = 3 only: the three bipartite decomposition sums, reported side by
  // side, never asserted equal.  Index l-1 holds C_{m:n} + C_{l:mn}.
  std::array<std::optional<double>, 3> tri_sums;
  bool converged = true;
};

CoherenceReport decomposition_report(const QuantumState& rho,
                                     const BasisSpec& basis,
                                     const OptimOptions& opts = {},
                                     const ReportRequest& request = ReportRequest::all());

}  // namespace qcoh
