#include "qcoh/sweep.hpp"

#include "qcoh/named_states.hpp"
#include "qcoh/oracles.hpp"
#include "qcoh/qjsd.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/state_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace qcoh {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw UsageError("invalid number for " + key + ": " + value);
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long x = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw UsageError("invalid integer for " + key + ": " + value);
  }
}

Scenario parse_scenario(const std::string& value) {
  if (value == "ising2") return Scenario::Ising2;
  if (value == "werner-ghz") return Scenario::WernerGhz;
  if (value == "w-state") return Scenario::WState;
  if (value == "xxz") return Scenario::Xxz;
  if (value == "file") return Scenario::File;
  throw UsageError("unknown scenario: " + value);
}

void parse_outputs(SweepConfig& config, const std::string& value) {
  ReportRequest req;
  std::stringstream ss(value);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "all") {
      req = ReportRequest::all();
    } else if (token == "c_total") {
      req.outputs.insert(Quantity::CTotal);
    } else if (token == "c_local") {
      req.outputs.insert(Quantity::CLocal);
    } else if (token == "c_intrinsic") {
      req.outputs.insert(Quantity::CIntrinsic);
    } else if (token == "per_site") {
      req.outputs.insert(Quantity::PerSite);
    } else if (token == "pairwise") {
      req.outputs.insert(Quantity::Pairwise);
      req.pairwise_first_site_only = false;
    } else if (token == "pairwise1") {
      req.outputs.insert(Quantity::Pairwise);
      req.pairwise_first_site_only = true;
    } else if (token == "bipartitions") {
      req.outputs.insert(Quantity::Bipartitions);
    } else if (token == "monogamy") {
      req.outputs.insert(Quantity::Monogamy);
    } else {
      throw UsageError("unknown output: " + token);
    }
  }
  if (req.outputs.empty()) throw UsageError("outputs list is empty");
  config.request = req;
  config.outputs_set = true;
}

}  // namespace

void apply_config_entry(SweepConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "scenario") {
    config.scenario = parse_scenario(value);
  } else if (key == "param") {
    config.grid_param = value;
  } else if (key == "start") {
    config.grid_start = parse_double(key, value);
    config.grid_set = true;
  } else if (key == "stop") {
    config.grid_stop = parse_double(key, value);
    config.grid_set = true;
  } else if (key == "points") {
    config.grid_points = static_cast<int>(parse_int(key, value));
    config.grid_set = true;
  } else if (key == "lambda") {
    config.lambda = parse_double(key, value);
  } else if (key == "J") {
    config.coupling_j = parse_double(key, value);
  } else if (key == "epsilon") {
    config.epsilon = parse_double(key, value);
  } else if (key == "delta") {
    config.delta = parse_double(key, value);
  } else if (key == "mu") {
    config.mu = parse_double(key, value);
  } else if (key == "phi") {
    config.phi = parse_double(key, value);
  } else if (key == "theta") {
    config.theta = parse_double(key, value);
  } else if (key == "N") {
    config.n_sites = static_cast<int>(parse_int(key, value));
  } else if (key == "boundary") {
    if (value == "periodic")
      config.boundary = Boundary::Periodic;
    else if (value == "open")
      config.boundary = Boundary::Open;
    else
      throw UsageError("boundary must be periodic or open");
  } else if (key == "path") {
    config.state_path = value;
  } else if (key == "out") {
    config.output_path = value;
  } else if (key == "outputs") {
    parse_outputs(config, value);
  } else if (key == "seed") {
    config.optim.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "restarts") {
    config.optim.restarts = static_cast<int>(parse_int(key, value));
  } else if (key == "max-iter") {
    config.optim.max_iterations = static_cast<int>(parse_int(key, value));
  } else if (key == "tol") {
    config.optim.objective_tolerance = parse_double(key, value);
  } else if (key == "ansatz-k") {
    config.optim.k_override = static_cast<int>(parse_int(key, value));
  } else if (key == "threads") {
    config.threads = static_cast<int>(parse_int(key, value));
  } else if (key == "allow-slow") {
    config.allow_slow = parse_int(key, value) != 0;
  } else {
    throw UsageError("unknown config key: " + key);
  }
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file: " + path);
  SweepConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) +
                       " is not key=value");
    apply_config_entry(config, line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

void finalize_config(SweepConfig& config) {
  // Scenario defaults.
  switch (config.scenario) {
    case Scenario::Ising2:
      config.n_sites = 2;
      if (config.grid_param.empty()) config.grid_param = "J";
      if (!config.grid_set) {
        config.grid_start = 0.0;
        config.grid_stop = 3.0;
        if (config.grid_points == 0) config.grid_points = 13;
      }
      break;
    case Scenario::WernerGhz:
      config.n_sites = 3;
      if (config.grid_param.empty()) config.grid_param = "mu";
      if (!config.grid_set) {
        config.grid_start = 0.0;
        config.grid_stop = 1.0;
        if (config.grid_points == 0) config.grid_points = 21;
      }
      if (config.phi == 0.0) config.phi = kPi / 4.0;
      break;
    case Scenario::WState:
      config.n_sites = 3;
      if (config.grid_param.empty()) config.grid_param = "phi";
      if (!config.grid_set) {
        config.grid_start = 0.0;
        config.grid_stop = 2.0 * kPi * 63.0 / 64.0;
        if (config.grid_points == 0) config.grid_points = 64;
      }
      if (config.theta == 0.0) config.theta = kPi / 4.0;
      break;
    case Scenario::Xxz:
      if (config.n_sites == 0) config.n_sites = 10;
      if (config.grid_param.empty()) config.grid_param = "delta";
      if (!config.grid_set) {
        config.grid_start = -2.0;
        config.grid_stop = 6.0;
        if (config.grid_points == 0) config.grid_points = 33;
      }
      break;
    case Scenario::File:
      if (config.state_path.empty())
        throw UsageError("scenario file requires path=<state file>");
      config.grid_param = "index";
      config.grid_start = 0.0;
      config.grid_stop = 0.0;
      config.grid_points = 1;
      break;
  }
  if (config.grid_points == 0) config.grid_points = 33;

  if (!config.outputs_set) {
    if (config.scenario == Scenario::Xxz)
      config.request = ReportRequest::monogamy_set();
    else
      config.request = ReportRequest::all();
  }

  // Scenario/parameter consistency.
  static const std::map<Scenario, std::vector<std::string>> allowed = {
      {Scenario::Ising2, {"J", "lambda", "epsilon"}},
      {Scenario::WernerGhz, {"mu", "phi"}},
      {Scenario::WState, {"phi", "theta"}},
      {Scenario::Xxz, {"delta", "J"}},
      {Scenario::File, {"index"}},
  };
  const auto& ok = allowed.at(config.scenario);
  if (std::find(ok.begin(), ok.end(), config.grid_param) == ok.end())
    throw UsageError("parameter '" + config.grid_param +
                     "' cannot be swept in this scenario");

  if (config.scenario != Scenario::File && config.grid_points < 2)
    throw UsageError("grid needs at least 2 points");
  if (!std::isfinite(config.grid_start) || !std::isfinite(config.grid_stop))
    throw UsageError("grid bounds must be finite");
  if (config.scenario == Scenario::WernerGhz) {
    double lo = config.grid_param == "mu" ? std::min(config.grid_start, config.grid_stop)
                                          : config.mu;
    double hi = config.grid_param == "mu" ? std::max(config.grid_start, config.grid_stop)
                                          : config.mu;
    if (lo < 0.0 || hi > 1.0) throw UsageError("mu must stay within [0,1]");
  }
  if (config.scenario == Scenario::Xxz &&
      (config.n_sites < 2 || config.n_sites > 14))
    throw UsageError("xxz N must lie in 2..14");

  config.optim.validate();

  // The full minimizations on >= 8 sites are a documented slow path.
  bool slow_outputs = config.request.outputs.count(Quantity::CTotal) ||
                      config.request.outputs.count(Quantity::CLocal) ||
                      config.request.outputs.count(Quantity::CIntrinsic);
  if (config.n_sites >= 8 && slow_outputs && !config.allow_slow)
    throw UsageError(
        "c_total/c_local/c_intrinsic at N >= 8 are a slow path; pass "
        "--allow-slow (allow-slow=1) to run them");

  if (config.threads < 0) throw UsageError("threads must be >= 0");
}

std::vector<std::string> csv_columns(const SweepConfig& config) {
  const auto& out = config.request.outputs;
  auto has = [&](Quantity q) { return out.count(q) > 0; };
  std::vector<std::string> cols = {"param"};
  if (has(Quantity::CTotal)) cols.push_back("c_total");
  if (has(Quantity::CLocal)) cols.push_back("c_local");
  if (has(Quantity::CIntrinsic)) cols.push_back("c_intrinsic");
  if (has(Quantity::PerSite))
    for (int s = 1; s <= config.n_sites; ++s)
      cols.push_back("c_site_" + std::to_string(s));
  if (has(Quantity::Pairwise)) {
    for (int m = 1; m < config.n_sites; ++m) {
      if (config.request.pairwise_first_site_only && m != 1) break;
      for (int n = m + 1; n <= config.n_sites; ++n)
        cols.push_back("c_pair_" + std::to_string(m) + "_" + std::to_string(n));
    }
  }
  if (has(Quantity::Bipartitions)) {
    std::vector<int> leads = {1};
    if (config.n_sites == 3) leads = {1, 2, 3};
    for (int lead : leads)
      cols.push_back("c_bipart_" + std::to_string(lead) + "_rest");
  }
  if (has(Quantity::CIntrinsic)) cols.push_back("c_full_split");
  if (has(Quantity::Monogamy)) cols.push_back("monogamy");
  if (has(Quantity::CTotal) && has(Quantity::CLocal) && has(Quantity::CIntrinsic)) {
    cols.push_back("slack_eq6");
    if (has(Quantity::PerSite)) cols.push_back("slack_eq7");
  }
  cols.push_back("converged");
  return cols;
}

namespace {

QuantumState build_point_state(const SweepConfig& config, double t) {
  auto pick = [&](const char* name, double fixed) {
    return config.grid_param == name ? t : fixed;
  };
  switch (config.scenario) {
    case Scenario::Ising2:
      return ground_state(ModelSpec::ising2(pick("lambda", config.lambda),
                                            pick("J", config.coupling_j),
                                            pick("epsilon", config.epsilon)))
          .state;
    case Scenario::WernerGhz:
      return werner_ghz(pick("mu", config.mu), pick("phi", config.phi));
    case Scenario::WState:
      return w_state(pick("theta", config.theta), pick("phi", config.phi));
    case Scenario::Xxz:
      return ground_state(ModelSpec::xxz(config.n_sites,
                                         pick("J", config.coupling_j),
                                         pick("delta", config.delta),
                                         config.boundary))
          .state;
    case Scenario::File:
      return load_state(config.state_path);
  }
  throw UsageError("unreachable scenario");
}

std::string format_row(const SweepConfig& config,
                       const std::vector<std::string>& cols, double param,
                       const CoherenceReport& rep) {
  std::string row;
  for (size_t c = 0; c < cols.size(); ++c) {
    const std::string& name = cols[c];
    std::string cell;
    if (name == "param") {
      cell = fmt9(param);
    } else if (name == "c_total") {
      cell = fmt9(*rep.c_total);
    } else if (name == "c_local") {
      cell = fmt9(*rep.c_local);
    } else if (name == "c_intrinsic") {
      cell = fmt9(*rep.c_intrinsic);
    } else if (name == "c_full_split") {
      cell = fmt9(*rep.full_split);
    } else if (name == "monogamy") {
      cell = fmt9(*rep.monogamy_m);
    } else if (name == "slack_eq6") {
      cell = fmt9(*rep.slack_eq6);
    } else if (name == "slack_eq7") {
      cell = fmt9(*rep.slack_eq7);
    } else if (name == "converged") {
      cell = rep.converged ? "1" : "0";
    } else if (name.rfind("c_site_", 0) == 0) {
      int s = std::stoi(name.substr(7));
      cell = fmt9(rep.per_site[s - 1]);
    } else if (name.rfind("c_pair_", 0) == 0) {
      size_t us = name.find('_', 7);
      int m = std::stoi(name.substr(7, us - 7));
      int n = std::stoi(name.substr(us + 1));
      cell = fmt9(rep.pairwise.at({m, n}));
    } else if (name.rfind("c_bipart_", 0) == 0) {
      int lead = std::stoi(name.substr(9));
      cell = fmt9(rep.bipartitions.at(lead));
    } else {
      throw std::logic_error("unknown column " + name);
    }
    if (c) row += ',';
    row += cell;
  }
  row += '\n';
  return row;
}

}  // namespace

void run_sweep(const SweepConfig& config, std::ostream& os) {
  SweepConfig cfg = config;
  finalize_config(cfg);

  const int points = cfg.grid_points;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = points == 1 ? cfg.grid_start
                          : cfg.grid_start + (cfg.grid_stop - cfg.grid_start) *
                                                 double(i) / double(points - 1);

  const std::vector<std::string> cols = csv_columns(cfg);
  std::vector<std::string> rows(points);

  int nthreads = cfg.threads > 0
                     ? cfg.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, points));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < points; i = next.fetch_add(1)) {
      try {
        QuantumState rho = build_point_state(cfg, grid[i]);
        OptimOptions opts = cfg.optim;
        opts.seed = cfg.optim.seed ^ static_cast<std::uint64_t>(i);
        BasisSpec basis = BasisSpec::computational(rho.dims());
        CoherenceReport rep = decomposition_report(rho, basis, opts, cfg.request);
        rows[i] = format_row(cfg, cols, grid[i], rep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const std::string& row : rows) os << row;
}

void run_sweep(const SweepConfig& config) {
  if (config.output_path.empty()) {
    run_sweep(config, std::cout);
    return;
  }
  std::ofstream f(config.output_path);
  if (!f) throw UsageError("cannot open output file: " + config.output_path);
  run_sweep(config, f);
}

CoherenceReport analyze_state(const QuantumState& rho, const OptimOptions& opts) {
  BasisSpec basis = BasisSpec::computational(rho.dims());
  return decomposition_report(rho, basis, opts, ReportRequest::all());
}

void write_report_kv(std::ostream& os, const CoherenceReport& rep) {
  os << "n_sites=" << rep.n_sites << '\n';
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) os << key << '=' << fmt9(*v) << '\n';
  };
  put("c_total", rep.c_total);
  put("c_local", rep.c_local);
  put("c_intrinsic", rep.c_intrinsic);
  put("c_full_split", rep.full_split);
  for (size_t s = 0; s < rep.per_site.size(); ++s)
    os << "c_site_" << s + 1 << '=' << fmt9(rep.per_site[s]) << '\n';
  for (const auto& [key, value] : rep.pairwise)
    os << "c_pair_" << key.first << '_' << key.second << '=' << fmt9(value)
       << '\n';
  for (const auto& [lead, value] : rep.bipartitions)
    os << "c_bipart_" << lead << "_rest=" << fmt9(value) << '\n';
  put("monogamy", rep.monogamy_m);
  put("slack_eq6", rep.slack_eq6);
  put("slack_eq7", rep.slack_eq7);
  for (int l = 0; l < 3; ++l)
    if (rep.tri_sums[l])
      os << "tri_sum_" << l + 1 << '=' << fmt9(*rep.tri_sums[l]) << '\n';
  os << "converged=" << (rep.converged ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

namespace {

struct Suite {
  std::string name;
  int count = 0;
  double max_dev = 0.0;
  double threshold = 0.0;

  void record(double dev) {
    ++count;
    max_dev = std::max(max_dev, dev);
  }
  bool pass() const { return max_dev <= threshold; }
};

void print_suite(std::ostream& os, const Suite& s) {
  os << "suite " << s.name << ": n=" << s.count << " max_dev=" << fmt9(s.max_dev)
     << (s.pass() ? " PASS" : " FAIL") << '\n';
}

}  // namespace

int selftest(std::ostream& os) {
  std::vector<Suite> suites;
  Rng rng(0xC0FFEEULL);  // fixed stream: oracle values are seed-independent

  {
    Suite s{"entropy-oracles", 0, 0.0, 1e-10};
    Matrix d2 = Matrix::Zero(2, 2);
    d2(0, 0) = 0.75;
    d2(1, 1) = 0.25;
    QuantumState diag34({2}, d2);
    s.record(std::abs(vn_entropy(diag34) - oracles::binary_entropy(0.75)));
    s.record(std::abs(vn_entropy(maximally_mixed({2})) - 1.0));
    QuantumState pure = random_pure_state({2, 2}, rng);
    s.record(std::abs(vn_entropy(pure)));
    for (int i = 0; i < 3; ++i) {
      QuantumState a = random_mixed_state({2}, 0, rng);
      QuantumState b = random_mixed_state({2, 2}, 2, rng);
      s.record(std::abs(vn_entropy(tensor(a, b)) - vn_entropy(a) - vn_entropy(b)));
    }
    suites.push_back(s);
  }

  {
    Suite s{"qjsd-anchors", 0, 0.0, 1e-9};
    QuantumState zero = QuantumState::from_pure({2}, Vector{{1.0, 0.0}});
    QuantumState one = QuantumState::from_pure({2}, Vector{{0.0, 1.0}});
    Vector pv(2);
    pv << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    QuantumState plus = QuantumState::from_pure({2}, pv);
    s.record(std::abs(qjsd(zero, one) - 1.0));
    s.record(std::abs(qjsd(zero, plus) - oracles::qjsd_zero_plus()));
    for (int i = 0; i < 5; ++i) {
      QuantumState r = random_mixed_state({2, 2}, 0, rng);
      s.record(qjsd(r, r));
    }
    Matrix mix = Matrix::Zero(4, 4);
    mix(0, 0) = 0.5;
    mix(3, 3) = 0.5;
    s.record(std::abs(qjsd_distance(bell_state(-1), QuantumState({2, 2}, mix)) -
                      oracles::bell_anchor_distance()));
    suites.push_back(s);
  }

  {
    Suite s{"metric-properties", 0, 0.0, 1e-9};
    for (int i = 0; i < 200; ++i) {
      std::vector<int> dims = i < 100 ? std::vector<int>{2} : std::vector<int>{2, 2};
      QuantumState a = random_mixed_state(dims, 0, rng);
      QuantumState b = random_mixed_state(dims, 0, rng);
      QuantumState c = random_mixed_state(dims, 0, rng);
      double jab = qjsd(a, b);
      s.record(std::abs(jab - qjsd(b, a)));
      s.record(std::max(0.0, -jab));
      s.record(std::max(0.0, jab - 1.0));
      double dab = std::sqrt(jab), dbc = qjsd_distance(b, c), dac = qjsd_distance(a, c);
      s.record(std::max(0.0, dac - dab - dbc));
    }
    suites.push_back(s);
  }

  {
    Suite s{"unitary-invariance", 0, 0.0, 1e-9};
    for (int i = 0; i < 20; ++i) {
      QuantumState a = random_mixed_state({2, 2}, 0, rng);
      QuantumState b = random_mixed_state({2, 2}, 2, rng);
      Matrix u = random_unitary(4, rng);
      QuantumState au = QuantumState::unchecked({2, 2}, u * a.matrix() * u.adjoint());
      QuantumState bu = QuantumState::unchecked({2, 2}, u * b.matrix() * u.adjoint());
      s.record(std::abs(qjsd(au, bu) - qjsd(a, b)));
    }
    suites.push_back(s);
  }

  {
    Suite s{"incoherent-vs-grid", 0, 0.0, 2e-3};
    BasisSpec basis = BasisSpec::computational({2, 2});
    for (int i = 0; i < 5; ++i) {
      QuantumState rho = random_mixed_state({2, 2}, 0, rng);
      MinimizationResult res = closest_incoherent(rho, basis);
      s.record(std::abs(res.objective - oracles::incoherent_grid_scan(rho, 0.01)));
    }
    suites.push_back(s);
  }

  {
    Suite s{"factory-anchors", 0, 0.0, 2e-3};
    MinimizationResult bell =
        closest_separable(bell_state(-1), {{1}, {2}});
    s.record(std::abs(std::sqrt(bell.objective) - oracles::bell_anchor_distance()));
    QuantumState ghz = ghz_state(kPi / 4.0);
    BasisSpec b3 = BasisSpec::computational({2, 2, 2});
    for (int site = 1; site <= 3; ++site)
      s.record(site_coherence(ghz, site, b3));
    s.record(pairwise_intrinsic(ghz, 1, 2));
    QuantumState prod = product_plus_state(2);
    BasisSpec b2 = BasisSpec::computational({2, 2});
    s.record(std::abs(site_coherence(prod, 1, b2) - oracles::bell_anchor_distance()));
    suites.push_back(s);
  }

  bool all_pass = true;
  for (const Suite& s : suites) {
    print_suite(os, s);
    all_pass = all_pass && s.pass();
  }
  os << (all_pass ? "selftest PASS" : "selftest FAIL") << '\n';
  return all_pass ? 0 : 1;
}

}  // namespace qcoh
