// polis — spatial multi-market economy simulator and tax-policy optimizer.
//
// Commands: gen-map, simulate, estimate, optimize (sa|sls), stats.
// Exit codes: 0 success, 2 usage/validation, 1 runtime failure.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polis/campaign.hpp"
#include "polis/economy.hpp"
#include "polis/errors.hpp"
#include "polis/estimator.hpp"
#include "polis/evolution.hpp"
#include "polis/metaheuristics.hpp"
#include "polis/parallel.hpp"
#include "polis/rng.hpp"
#include "polis/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace polis;

namespace {

// ---------------------------------------------------------------------------
// Small IO helpers

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// Values files: one number per line; blank lines ignored. With a column
// index, lines are CSV rows and a non-numeric first row is treated as a
// header and skipped.
std::vector<double> read_values_file(const std::string& path,
                                     std::optional<std::size_t> column) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string cell = line;
    if (column) {
      std::stringstream row(line);
      std::string field;
      std::size_t idx = 0;
      bool found = false;
      while (std::getline(row, field, ',')) {
        if (idx++ == *column) {
          cell = field;
          found = true;
          break;
        }
      }
      if (!found) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": no column " +
                         std::to_string(*column));
      }
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
      values.push_back(v);
    } catch (const std::exception&) {
      if (column && line_no == 1) continue;  // CSV header
      throw ParseError(path + ":" + std::to_string(line_no) + ": not a number: '" +
                       cell + "'");
    }
  }
  if (values.empty()) throw ParseError(path + ": no values found");
  return values;
}

// ---------------------------------------------------------------------------
// Config-file overlay: flags beat the config file, the config file beats
// built-in defaults.

class ConfigOverlay {
 public:
  void load(const std::string& path) {
    if (path.empty()) return;
    cfg_ = load_json_file(path);
    if (!cfg_.is_object()) throw ParseError(path + ": config must be a JSON object");
  }

  template <typename T>
  void apply(const CLI::Option* opt, const char* key, T& value) const {
    if (opt != nullptr && opt->count() > 0) return;
    const auto it = cfg_.find(key);
    if (it == cfg_.end()) return;
    try {
      value = it->get<T>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("config key '") + key + "': " + e.what());
    }
  }

 private:
  json cfg_ = json::object();
};

// ---------------------------------------------------------------------------
// Shared option bundles

// Accepts a scalar (broadcast to every market) or one value per market.
std::vector<double> broadcast(const std::vector<double>& values, std::size_t m,
                              const char* what) {
  if (values.size() == 1) return std::vector<double>(m, values[0]);
  if (values.size() == m) return values;
  throw InvalidConfig(std::string(what) + ": expected 1 or " + std::to_string(m) +
                      " values, got " + std::to_string(values.size()));
}

struct SimOptions {
  std::size_t steps = 1000;
  std::size_t warmup = 100;
  std::size_t neighbors = 4;
  double mimic_prob = 0.5;
  double mutate_prob = 0.0;
  std::vector<double> intercept = {200.0};
  std::vector<double> slope = {3.0};
  double transport = 1.0;

  CLI::Option* steps_opt = nullptr;
  CLI::Option* warmup_opt = nullptr;
  CLI::Option* neighbors_opt = nullptr;
  CLI::Option* mimic_opt = nullptr;
  CLI::Option* mutate_opt = nullptr;
  CLI::Option* intercept_opt = nullptr;
  CLI::Option* slope_opt = nullptr;
  CLI::Option* transport_opt = nullptr;

  void attach(CLI::App* cmd) {
    steps_opt = cmd->add_option("--steps", steps, "Simulation rounds");
    warmup_opt = cmd->add_option("--warmup", warmup,
                                 "First round of the objective window");
    neighbors_opt = cmd->add_option("--neighbors", neighbors,
                                    "Mimicking pool size N (self included)");
    mimic_opt = cmd->add_option("--mimic-prob", mimic_prob, "P_r")
                    ->check(CLI::Range(0.0, 1.0));
    mutate_opt = cmd->add_option("--mutate-prob", mutate_prob, "P_m")
                     ->check(CLI::Range(0.0, 1.0));
    intercept_opt = cmd->add_option("--intercept", intercept,
                                    "Demand intercept(s), scalar or per market")
                        ->delimiter(',');
    slope_opt = cmd->add_option("--slope", slope,
                                "Demand slope(s), scalar or per market")
                    ->delimiter(',');
    transport_opt = cmd->add_option("--transport", transport,
                                    "Transport cost per tile");
  }

  void overlay(const ConfigOverlay& cfg) {
    cfg.apply(steps_opt, "steps", steps);
    cfg.apply(warmup_opt, "warmup", warmup);
    cfg.apply(neighbors_opt, "neighbor_count", neighbors);
    cfg.apply(mimic_opt, "mimic_prob", mimic_prob);
    cfg.apply(mutate_opt, "mutate_prob", mutate_prob);
    cfg.apply(intercept_opt, "intercept", intercept);
    cfg.apply(slope_opt, "slope", slope);
    cfg.apply(transport_opt, "transport_rate", transport);
  }

  SimConfig build(std::size_t n_markets, std::uint64_t seed) const {
    SimConfig config;
    config.steps = steps;
    config.warmup = warmup;
    config.neighbor_count = neighbors;
    config.mimic_prob = mimic_prob;
    config.mutate_prob = mutate_prob;
    MarketParams params;
    params.intercept = broadcast(intercept, n_markets, "--intercept");
    params.slope = broadcast(slope, n_markets, "--slope");
    params.transport_rate = transport;
    config.market_params = std::move(params);
    config.seed = seed;
    return config;
  }
};

struct BoundsOptions {
  double rate_min = -0.25;
  double rate_max = 0.25;
  double fixed_min = -50.0;
  double fixed_max = 50.0;

  CLI::Option* rate_min_opt = nullptr;
  CLI::Option* rate_max_opt = nullptr;
  CLI::Option* fixed_min_opt = nullptr;
  CLI::Option* fixed_max_opt = nullptr;

  void attach(CLI::App* cmd) {
    rate_min_opt = cmd->add_option("--rate-min", rate_min, "Lower rate bound");
    rate_max_opt = cmd->add_option("--rate-max", rate_max, "Upper rate bound");
    fixed_min_opt = cmd->add_option("--fixed-min", fixed_min, "Lower fixed bound");
    fixed_max_opt = cmd->add_option("--fixed-max", fixed_max, "Upper fixed bound");
  }

  void overlay(const ConfigOverlay& cfg) {
    cfg.apply(rate_min_opt, "rate_min", rate_min);
    cfg.apply(rate_max_opt, "rate_max", rate_max);
    cfg.apply(fixed_min_opt, "fixed_min", fixed_min);
    cfg.apply(fixed_max_opt, "fixed_max", fixed_max);
  }

  void check(const TaxPolicy& policy) const {
    for (const double r : policy.rate) {
      if (r < rate_min || r > rate_max) {
        throw InvalidConfig("policy rate " + std::to_string(r) +
                            " outside [" + std::to_string(rate_min) + ", " +
                            std::to_string(rate_max) + "]");
      }
    }
    for (const double f : policy.fixed) {
      if (f < fixed_min || f > fixed_max) {
        throw InvalidConfig("policy fixed amount " + std::to_string(f) +
                            " outside [" + std::to_string(fixed_min) + ", " +
                            std::to_string(fixed_max) + "]");
      }
    }
  }
};

struct PolicyOptions {
  std::vector<double> rate;
  std::vector<double> fixed;
  std::string policy_file;

  CLI::Option* rate_opt = nullptr;
  CLI::Option* fixed_opt = nullptr;
  CLI::Option* file_opt = nullptr;

  void attach(CLI::App* cmd) {
    rate_opt = cmd->add_option("--rate", rate,
                               "Tax rate(s) t_j, scalar or per market")
                   ->delimiter(',');
    fixed_opt = cmd->add_option("--fixed", fixed,
                                "Fixed transfer(s), scalar or per market")
                    ->delimiter(',');
    file_opt = cmd->add_option("--policy", policy_file,
                               "Policy JSON file {\"rate\": [...], \"fixed\": [...]}");
  }

  void overlay(const ConfigOverlay& cfg) {
    cfg.apply(rate_opt, "rate", rate);
    cfg.apply(fixed_opt, "fixed", fixed);
  }

  TaxPolicy build(std::size_t n_markets) const {
    if (!policy_file.empty()) {
      if (!rate.empty() || !fixed.empty()) {
        throw InvalidConfig("give either --policy or --rate/--fixed, not both");
      }
      const auto policy = load_json_file(policy_file).get<TaxPolicy>();
      if (policy.n_markets() != n_markets) {
        throw InvalidConfig(policy_file + ": policy has " +
                            std::to_string(policy.n_markets()) +
                            " markets, map has " + std::to_string(n_markets));
      }
      return policy;
    }
    TaxPolicy policy = TaxPolicy::zero(n_markets);
    if (!rate.empty()) policy.rate = broadcast(rate, n_markets, "--rate");
    if (!fixed.empty()) policy.fixed = broadcast(fixed, n_markets, "--fixed");
    return policy;
  }
};

EconomyMap load_map(const std::string& path) {
  try {
    return load_json_file(path).get<EconomyMap>();
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Defaults table

json defaults_table() {
  return json{
      {"economy",
       {{"grid_size", 100}, {"n_firms", 100}, {"n_markets", 5},
        {"intercept", 200.0}, {"slope", 3.0}, {"transport_rate", 1.0}}},
      {"evolution",
       {{"steps", 1000}, {"warmup", 100}, {"neighbor_count", 4},
        {"mimic_prob", 0.5}, {"mutate_prob", 0.0}}},
      {"policy_bounds",
       {{"rate_min", -0.25}, {"rate_max", 0.25},
        {"fixed_min", -50.0}, {"fixed_max", 50.0}}},
      {"neighborhood", {{"rate_radius", 0.02}, {"fixed_radius", 5.0}}},
      {"estimator", {{"n_sim", 10000}, {"confidence", 0.95}}},
      {"annealing",
       {{"t0", 10.0}, {"alpha", 0.8}, {"inner_iters", 10},
        {"t_final", 0.001}, {"max_evaluations", 210}}},
      {"local_search", {{"iterations", 200}}},
  };
}

// ---------------------------------------------------------------------------
// gen-map

struct GenMapCmd {
  std::uint64_t seed = 0;
  std::size_t firms = 100;
  std::size_t markets = 5;
  int grid = 100;
  std::string out;
  std::string config_path;
  ConfigOverlay cfg;
  CLI::Option* firms_opt = nullptr;
  CLI::Option* markets_opt = nullptr;
  CLI::Option* grid_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Placement seed");
    firms_opt = cmd->add_option("--firms", firms, "Number of firms")
                    ->check(CLI::PositiveNumber);
    markets_opt = cmd->add_option("--markets", markets, "Number of markets")
                      ->check(CLI::PositiveNumber);
    grid_opt = cmd->add_option("--grid", grid, "Grid side length in tiles")
                   ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--out", out, "Output map JSON")->required();
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->callback([this] { run(); });
  }

  void run() {
    cfg.load(config_path);
    cfg.apply(firms_opt, "n_firms", firms);
    cfg.apply(markets_opt, "n_markets", markets);
    cfg.apply(grid_opt, "grid_size", grid);
    const EconomyMap map = generate_map(seed, firms, markets, grid);
    write_json_file(out, json(map));
    std::cout << out << "\n";
  }
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
  std::string map_path;
  std::string out = "trace.csv";
  std::string summary_path;
  std::string plot_path;
  std::string config_path;
  std::uint64_t seed = 0;
  SimOptions sim;
  PolicyOptions policy;
  BoundsOptions bounds;
  ConfigOverlay cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--map", map_path, "Economy map JSON")->required();
    cmd->add_option("--seed", seed, "Simulation seed");
    cmd->add_option("-o,--out", out, "Trace CSV path");
    cmd->add_option("--summary", summary_path,
                    "Summary JSON path (stdout when omitted)");
    cmd->add_option("--plot-data", plot_path, "Per-step mean-profit CSV path");
    cmd->add_option("--config", config_path, "JSON config file");
    sim.attach(cmd);
    policy.attach(cmd);
    bounds.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    cfg.load(config_path);
    sim.overlay(cfg);
    policy.overlay(cfg);
    bounds.overlay(cfg);
    const EconomyMap map = load_map(map_path);
    const SimConfig config = sim.build(map.n_markets(), seed);
    const TaxPolicy tax = policy.build(map.n_markets());
    bounds.check(tax);

    const SimResult result = run_simulation(map, config.market_params, tax, config);

    std::ostringstream trace;
    write_trace_csv(trace, result.trace, map.n_markets());
    write_text_file(out, trace.str());

    if (!plot_path.empty()) {
      std::ostringstream plot;
      plot << "t,mean_profit\n";
      char buf[64];
      for (const auto& rec : result.trace) {
        std::snprintf(buf, sizeof buf, "%.10g", rec.mean_profit);
        plot << rec.t << ',' << buf << '\n';
      }
      write_text_file(plot_path, plot.str());
    }

    const json summary{{"objective", result.objective},
                       {"steps", config.steps},
                       {"warmup", config.warmup},
                       {"seed", seed},
                       {"n_firms", map.n_firms()},
                       {"n_markets", map.n_markets()},
                       {"policy", tax},
                       {"trace", out}};
    if (summary_path.empty()) {
      std::cout << summary.dump(2) << "\n";
    } else {
      write_json_file(summary_path, summary);
    }
  }
};

// ---------------------------------------------------------------------------
// estimate

struct EstimateCmd {
  std::string map_path;
  std::string out;
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t n_sim = 10000;
  double confidence = 0.95;
  bool parallel = false;
  bool keep_replicates = false;
  SimOptions sim;
  PolicyOptions policy;
  BoundsOptions bounds;
  ConfigOverlay cfg;
  CLI::Option* n_sim_opt = nullptr;
  CLI::Option* confidence_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--map", map_path, "Economy map JSON")->required();
    cmd->add_option("--seed", seed, "Root seed for replicate derivation");
    n_sim_opt = cmd->add_option("--n-sim", n_sim, "Number of replications")
                    ->check(CLI::PositiveNumber);
    confidence_opt = cmd->add_option("--confidence", confidence,
                                     "Half-width confidence level");
    cmd->add_flag("--parallel", parallel, "Run replicates in parallel");
    cmd->add_flag("--keep-replicates", keep_replicates,
                  "Include per-replicate values in the JSON");
    cmd->add_option("-o,--out", out, "Estimate JSON path (stdout when omitted)");
    cmd->add_option("--config", config_path, "JSON config file");
    sim.attach(cmd);
    policy.attach(cmd);
    bounds.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    cfg.load(config_path);
    sim.overlay(cfg);
    policy.overlay(cfg);
    bounds.overlay(cfg);
    cfg.apply(n_sim_opt, "n_sim", n_sim);
    cfg.apply(confidence_opt, "confidence", confidence);
    const EconomyMap map = load_map(map_path);
    const SimConfig config = sim.build(map.n_markets(), 0);
    const TaxPolicy tax = policy.build(map.n_markets());
    bounds.check(tax);

    const ObjectiveEstimate est = estimate_expected_objective(
        map, config.market_params, tax, config, n_sim, seed, confidence, parallel);
    json j = est;
    if (keep_replicates) j["replicates"] = est.replicate_values;
    if (out.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      write_json_file(out, j);
    }
  }
};

// ---------------------------------------------------------------------------
// optimize

struct OptimizeCmd {
  std::string map_path;
  std::string out_dir = ".";
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t n_sim = 10000;
  std::size_t executions = 1;
  bool parallel = false;
  bool random_initial = false;
  SimOptions sim;
  PolicyOptions policy;
  BoundsOptions bounds;
  ConfigOverlay cfg;

  double t0 = 10.0;
  double alpha = 0.8;
  std::size_t inner_iters = 10;
  double t_final = 0.001;
  std::size_t max_evals = 210;
  std::size_t iterations = 200;
  double rate_radius = 0.02;
  double fixed_radius = 5.0;

  CLI::Option* n_sim_opt = nullptr;
  CLI::Option* executions_opt = nullptr;
  CLI::Option* t0_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* inner_opt = nullptr;
  CLI::Option* t_final_opt = nullptr;
  CLI::Option* max_evals_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
  CLI::Option* rate_radius_opt = nullptr;
  CLI::Option* fixed_radius_opt = nullptr;

  void attach_common(CLI::App* cmd) {
    cmd->add_option("--map", map_path, "Economy map JSON")->required();
    cmd->add_option("--seed", seed, "Campaign root seed");
    n_sim_opt = cmd->add_option("--n-sim", n_sim, "Replications per evaluation")
                    ->check(CLI::PositiveNumber);
    executions_opt =
        cmd->add_option("--executions", executions, "Independent optimizer runs")
            ->check(CLI::PositiveNumber);
    cmd->add_flag("--parallel", parallel,
                  "Parallelize executions (or replicates for a single run)");
    cmd->add_flag("--random-initial", random_initial,
                  "Draw each execution's initial policy uniformly from the box");
    cmd->add_option("-o,--out", out_dir, "Output directory");
    cmd->add_option("--config", config_path, "JSON config file");
    rate_radius_opt = cmd->add_option("--rate-radius", rate_radius,
                                      "Rate move radius");
    fixed_radius_opt = cmd->add_option("--fixed-radius", fixed_radius,
                                       "Fixed-amount move radius");
    sim.attach(cmd);
    policy.attach(cmd);
    bounds.attach(cmd);
  }

  void attach_sa(CLI::App* cmd) {
    attach_common(cmd);
    t0_opt = cmd->add_option("--t0", t0, "Initial temperature");
    alpha_opt = cmd->add_option("--alpha", alpha, "Geometric cooling factor");
    inner_opt = cmd->add_option("--inner-iters", inner_iters,
                                "Moves per temperature level");
    t_final_opt = cmd->add_option("--t-final", t_final, "Termination temperature");
    max_evals_opt = cmd->add_option("--max-evals", max_evals,
                                    "Evaluation budget, initial included");
    cmd->callback([this] { run(OptimizerKind::kSimulatedAnnealing); });
  }

  void attach_sls(CLI::App* cmd) {
    attach_common(cmd);
    iterations_opt = cmd->add_option("--iterations", iterations,
                                     "Candidate evaluations after the initial one");
    cmd->callback([this] { run(OptimizerKind::kLocalSearch); });
  }

  NeighborhoodSpec neighborhood() const {
    NeighborhoodSpec spec;
    spec.rate_radius = rate_radius;
    spec.fixed_radius = fixed_radius;
    spec.rate_bounds = {bounds.rate_min, bounds.rate_max};
    spec.fixed_bounds = {bounds.fixed_min, bounds.fixed_max};
    return spec;
  }

  void run(OptimizerKind kind) {
    cfg.load(config_path);
    sim.overlay(cfg);
    policy.overlay(cfg);
    bounds.overlay(cfg);
    cfg.apply(n_sim_opt, "n_sim", n_sim);
    cfg.apply(executions_opt, "executions", executions);
    cfg.apply(rate_radius_opt, "rate_radius", rate_radius);
    cfg.apply(fixed_radius_opt, "fixed_radius", fixed_radius);
    cfg.apply(t0_opt, "t0", t0);
    cfg.apply(alpha_opt, "alpha", alpha);
    cfg.apply(inner_opt, "inner_iters", inner_iters);
    cfg.apply(t_final_opt, "t_final", t_final);
    cfg.apply(max_evals_opt, "max_evaluations", max_evals);
    cfg.apply(iterations_opt, "iterations", iterations);

    const EconomyMap map = load_map(map_path);
    CampaignSpec spec;
    spec.sim = sim.build(map.n_markets(), 0);
    spec.params = spec.sim.market_params;
    spec.n_sim = n_sim;
    spec.kind = kind;
    spec.annealer = AnnealerConfig{t0, alpha, inner_iters, t_final, max_evals,
                                   neighborhood()};
    spec.search = SearchConfig{iterations, neighborhood()};
    spec.initial = policy.build(map.n_markets());
    bounds.check(spec.initial);
    spec.random_initial = random_initial;
    spec.executions = executions;
    spec.root_seed = seed;

    const char* algo =
        kind == OptimizerKind::kSimulatedAnnealing ? "sa" : "sls";
    fs::create_directories(out_dir);

    std::vector<OptimizerRun> runs;
    try {
      runs = run_campaign(map, spec, parallel);
    } catch (const EvaluatorError& e) {
      const fs::path partial = fs::path(out_dir) /
                               (std::string(algo) + "_history_partial.csv");
      std::ostringstream hist;
      write_history_csv(hist, e.partial);
      write_text_file(partial.string(), hist.str());
      std::cerr << "error: " << e.what() << "\npartial history: " << partial
                << "\n";
      throw std::runtime_error("optimizer aborted");
    }

    std::vector<double> best_values;
    char name[64];
    for (std::size_t e = 0; e < runs.size(); ++e) {
      std::snprintf(name, sizeof name, "%s_exec%03zu", algo, e + 1);
      std::ostringstream hist;
      write_history_csv(hist, runs[e]);
      write_text_file((fs::path(out_dir) / (std::string(name) + "_history.csv")).string(),
                      hist.str());
      write_json_file((fs::path(out_dir) / (std::string(name) + "_summary.json")).string(),
                      json(runs[e]));
      best_values.push_back(runs[e].best_value);
    }

    std::ostringstream values;
    char buf[64];
    for (const double v : best_values) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      values << buf << '\n';
    }
    const fs::path values_path =
        fs::path(out_dir) / (std::string(algo) + "_best_values.txt");
    write_text_file(values_path.string(), values.str());

    std::size_t best_exec = 0;
    for (std::size_t e = 1; e < runs.size(); ++e) {
      if (runs[e].best_value < runs[best_exec].best_value) best_exec = e;
    }
    json campaign{{"algorithm", algo},
                  {"executions", executions},
                  {"random_initial", random_initial},
                  {"n_sim", n_sim},
                  {"root_seed", seed},
                  {"best_values", best_values},
                  {"best_execution", best_exec + 1},
                  {"best_value", runs[best_exec].best_value},
                  {"best_policy", runs[best_exec].best_policy},
                  {"values_file", values_path.string()}};
    write_json_file((fs::path(out_dir) / (std::string(algo) + "_campaign.json")).string(),
                    campaign);
    std::cout << campaign.dump(2) << "\n";
  }
};

// ---------------------------------------------------------------------------
// stats

struct StatsCmd {
  std::vector<std::string> files;
  std::vector<std::string> labels;
  std::optional<std::size_t> column;
  std::size_t column_raw = 0;
  std::string out;
  CLI::Option* column_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("files", files, "One or two value files")
        ->required()
        ->expected(1, 2);
    cmd->add_option("--labels", labels, "Sample labels")->delimiter(',');
    column_opt = cmd->add_option("--column", column_raw,
                                 "Read this 0-based CSV column instead of plain lines");
    cmd->add_option("-o,--out", out, "Report JSON path");
    cmd->callback([this] { run(); });
  }

  void run() {
    if (column_opt->count() > 0) column = column_raw;
    std::vector<std::vector<double>> samples;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < files.size(); ++i) {
      samples.push_back(read_values_file(files[i], column));
      names.push_back(i < labels.size() ? labels[i]
                                        : fs::path(files[i]).stem().string());
    }
    const StatsReport report = build_stats_report(samples, names);
    std::cout << render_text(report);
    if (!out.empty()) write_json_file(out, json(report));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial multi-market economy simulator and tax-policy optimizer"};
  app.require_subcommand(0, 1);
  app.add_flag_callback(
      "--show-defaults",
      [] {
        std::cout << defaults_table().dump(2) << "\n";
        std::exit(0);
      },
      "Print the built-in defaults table and exit");

  GenMapCmd gen_map;
  gen_map.attach(app.add_subcommand("gen-map", "Generate a random economy map"));
  SimulateCmd simulate;
  simulate.attach(app.add_subcommand("simulate", "Run one simulation"));
  EstimateCmd estimate;
  estimate.attach(
      app.add_subcommand("estimate", "Monte-Carlo estimate of the expected objective"));
  auto* optimize =
      app.add_subcommand("optimize", "Search tax policies with a metaheuristic");
  optimize->require_subcommand(1);
  OptimizeCmd optimize_sa;
  optimize_sa.attach_sa(optimize->add_subcommand("sa", "Simulated annealing"));
  OptimizeCmd optimize_sls;
  optimize_sls.attach_sls(
      optimize->add_subcommand("sls", "Stochastic local search"));
  StatsCmd stats;
  stats.attach(app.add_subcommand(
      "stats", "Summaries, confidence intervals and the one-sided test"));

  try {
    app.parse(argc, argv);
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return 0;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
