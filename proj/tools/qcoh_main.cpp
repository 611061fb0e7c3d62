// qcoh — coherence decomposition toolkit CLI.
//
// Subcommands:
//   sweep     run a parameter sweep and emit a CSV
//   analyze   full coherence report for a state file
//   selftest  run the analytic-oracle and property suites
//   state     emit a named factory state to a file
//
// Exit codes: 0 success, 1 selftest failure, 2 usage/validation error.

#include "qcoh/named_states.hpp"
#include "qcoh/state_io.hpp"
#include "qcoh/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

constexpr double kPi = 3.14159265358979323846;

struct OptimFlags {
  long seed = -1;
  int restarts = -1;
  int max_iter = -1;
  double tol = -1.0;
  int ansatz_k = -1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--seed", seed, "base RNG seed");
    cmd.add_option("--restarts", restarts, "optimizer restarts (0 = auto)");
    cmd.add_option("--max-iter", max_iter, "max optimizer iterations");
    cmd.add_option("--tol", tol, "objective tolerance");
    cmd.add_option("--ansatz-k", ansatz_k, "separable ansatz size (0 = auto)");
  }
  void apply(qcoh::OptimOptions& opts) const {
    if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);
    if (restarts >= 0) opts.restarts = restarts;
    if (max_iter >= 0) opts.max_iterations = max_iter;
    if (tol > 0.0) opts.objective_tolerance = tol;
    if (ansatz_k >= 0) opts.k_override = ansatz_k;
  }
};

int run_sweep_command(const std::string& config_path,
                      const std::vector<std::string>& sets,
                      const std::string& out, const std::string& outputs,
                      int threads, bool allow_slow, const OptimFlags& optim) {
  qcoh::SweepConfig config;
  if (!config_path.empty()) config = qcoh::parse_config_file(config_path);
  for (const std::string& kv : sets) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw qcoh::UsageError("--set expects key=value, got: " + kv);
    qcoh::apply_config_entry(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!outputs.empty()) qcoh::apply_config_entry(config, "outputs", outputs);
  if (!out.empty()) config.output_path = out;
  if (threads >= 0) config.threads = threads;
  if (allow_slow) config.allow_slow = true;
  qcoh::OptimOptions opts = config.optim;
  optim.apply(opts);
  config.optim = opts;
  qcoh::run_sweep(config);
  return 0;
}

int run_analyze_command(const std::string& path, const std::string& out,
                        const OptimFlags& optim) {
  qcoh::QuantumState rho = qcoh::load_state(path);
  qcoh::OptimOptions opts;
  optim.apply(opts);
  qcoh::CoherenceReport rep = qcoh::analyze_state(rho, opts);
  if (out.empty()) {
    qcoh::write_report_kv(std::cout, rep);
  } else {
    std::ofstream f(out);
    if (!f) throw qcoh::UsageError("cannot open output file: " + out);
    qcoh::write_report_kv(f, rep);
  }
  return 0;
}

int run_state_command(const std::string& name, double phi, double theta,
                      double mu, int sign, int n, const std::string& out) {
  qcoh::QuantumState rho = [&] {
    if (name == "ghz") return qcoh::ghz_state(phi);
    if (name == "werner-ghz") return qcoh::werner_ghz(mu, phi);
    if (name == "w") return qcoh::w_state(theta, phi);
    if (name == "bell") return qcoh::bell_state(sign);
    if (name == "product-plus") return qcoh::product_plus_state(n);
    throw qcoh::UsageError("unknown state name: " + name);
  }();
  if (out.empty()) {
    qcoh::save_state(std::cout, rho);
  } else {
    qcoh::save_state(out, rho);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence decomposition under the sqrt-QJSD distance"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep to CSV");
  std::string sweep_config, sweep_out, sweep_outputs;
  std::vector<std::string> sweep_sets;
  int sweep_threads = -1;
  bool sweep_allow_slow = false;
  OptimFlags sweep_optim;
  sweep->add_option("--config", sweep_config, "key=value config file");
  sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");
  sweep->add_option("--outputs", sweep_outputs,
                    "comma list: c_total,c_local,c_intrinsic,per_site,"
                    "pairwise,pairwise1,bipartitions,monogamy,all");
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = auto)");
  sweep->add_flag("--allow-slow", sweep_allow_slow,
                  "allow c_total/c_local/c_intrinsic at N >= 8");
  sweep->add_option("--set", sweep_sets, "config override key=value")
      ->take_all();
  sweep_optim.add_to(*sweep);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "full report for a state file");
  std::string analyze_path, analyze_out;
  OptimFlags analyze_optim;
  analyze->add_option("file", analyze_path, "state file (JSON)")->required();
  analyze->add_option("--out", analyze_out, "report path (default stdout)");
  analyze_optim.add_to(*analyze);

  // selftest
  app.add_subcommand("selftest", "run oracle and property suites");

  // state
  auto* state = app.add_subcommand("state", "emit a named factory state");
  std::string state_name, state_out;
  double state_phi = kPi / 4.0, state_theta = kPi / 4.0, state_mu = 1.0;
  int state_sign = -1, state_n = 2;
  state->add_option("name", state_name,
                    "ghz | werner-ghz | w | bell | product-plus")
      ->required();
  state->add_option("--phi", state_phi, "phi in radians");
  state->add_option("--theta", state_theta, "theta in radians");
  state->add_option("--mu", state_mu, "GHZ mixing weight in [0,1]");
  state->add_option("--sign", state_sign, "Bell sign, +1 or -1");
  state->add_option("--n", state_n, "site count for product-plus");
  state->add_option("--out", state_out, "state file path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed())
      return run_sweep_command(sweep_config, sweep_sets, sweep_out,
                               sweep_outputs, sweep_threads, sweep_allow_slow,
                               sweep_optim);
    if (analyze->parsed())
      return run_analyze_command(analyze_path, analyze_out, analyze_optim);
    if (app.get_subcommand("selftest")->parsed())
      return qcoh::selftest(std::cout);
    if (state->parsed())
      return run_state_command(state_name, state_phi, state_theta, state_mu,
                               state_sign, state_n, state_out);
  } catch (const qcoh::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
