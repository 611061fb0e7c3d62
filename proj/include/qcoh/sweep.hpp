// sweep.hpp — parameter sweeps, file analysis and the selftest: the library
// side of the command-line harness.

#pragma once

#include "qcoh/coherence.hpp"
#include "qcoh/spin_models.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace qcoh {

/// Invalid configs and CLI usage map to exit code 2 through this type.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Scenario { Ising2, WernerGhz, WState, Xxz, File };

struct SweepConfig {
  Scenario scenario = Scenario::Ising2;
  std::string grid_param;  // empty = scenario default axis
  double grid_start = 0.0;
  double grid_stop = 0.0;
  int grid_points = 0;     // 0 = scenario default
  bool grid_set = false;

  // Fixed model parameters (defaults filled per scenario).
  double lambda = 1.0;
  double coupling_j = 1.0;
  double epsilon = 0.2;
  double delta = 1.0;
  double mu = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  int n_sites = 0;
  Boundary boundary = Boundary::Periodic;
  std::string state_path;  // scenario File

  OptimOptions optim;
  ReportRequest request;
  bool outputs_set = false;
  bool allow_slow = false;
  int threads = 0;  // 0 = hardware concurrency
  std::string output_path;  // empty = stdout
};

/// Flat key=value lines; '#' starts a comment.  Unknown keys are errors.
SweepConfig parse_config_file(const std::string& path);

/// Applies one key=value override (same keys as the config file).
void apply_config_entry(SweepConfig& config, const std::string& key,
                        const std::string& value);

/// Fills scenario defaults and validates; throws UsageError.
void finalize_config(SweepConfig& config);

/// Ordered CSV column names for a finalized config.
std::vector<std::string> csv_columns(const SweepConfig& config);

/// Runs the sweep and writes the CSV (byte-deterministic for a fixed config
/// and seed, independent of thread count).
void run_sweep(const SweepConfig& config, std::ostream& os);

/// As above, writing to config.output_path (stdout when empty).
void run_sweep(const SweepConfig& config);

/// Full report for one state with every output enabled.
CoherenceReport analyze_state(const QuantumState& rho, const OptimOptions& opts);

/// Flat key=value serialization of a report.
void write_report_kv(std::ostream& os, const CoherenceReport& report);

/// Runs the analytic-oracle and property suites; prints one line per suite
/// and returns 0 on success, 1 on any failure.  Oracle values are
/// seed-independent by construction.
int selftest(std::ostream& os);

}  // namespace qcoh
