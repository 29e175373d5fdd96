#ifndef POLIS_METAHEURISTICS_HPP
#define POLIS_METAHEURISTICS_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polis/economy.hpp"
#include "polis/rng.hpp"

namespace polis {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Interval&) const = default;
};

// Box move shared by both optimizers: every coordinate moves uniformly within
// its radius, then clamps to its feasible interval.
struct NeighborhoodSpec {
  double rate_radius = 0.02;
  double fixed_radius = 5.0;
  Interval rate_bounds{-0.25, 0.25};
  Interval fixed_bounds{-50.0, 50.0};
};

struct AnnealerConfig {
  double t0 = 10.0;
  double alpha = 0.8;
  std::size_t inner_iters = 10;
  double t_final = 0.001;
  std::size_t max_evaluations = 210;  // hard cap, counting the initial solution
  NeighborhoodSpec neighborhood;
};

struct SearchConfig {
  std::size_t iterations = 200;  // candidate evaluations after the initial one
  NeighborhoodSpec neighborhood;
};

using NoisyObjective = std::function<double(const TaxPolicy&)>;

struct HistoryEntry {
  std::size_t eval_index = 0;  // 1-based; the initial solution is evaluation 0
  TaxPolicy policy;
  double value = 0.0;
  bool accepted = false;
  std::optional<double> temperature;  // empty for local search
};

struct OptimizerRun {
  TaxPolicy initial_policy;
  double initial_value = 0.0;
  TaxPolicy best_policy;   // lowest value the current solution ever took
  double best_value = 0.0;
  TaxPolicy final_policy;  // current solution at termination
  double final_value = 0.0;
  std::size_t evaluations = 0;
  std::size_t outer_loops = 0;  // cooling steps applied (annealing only)
  std::vector<HistoryEntry> history;  // one entry per candidate move
};

// Objective evaluation failed mid-run; `partial` holds everything up to the
// failing call.
struct EvaluatorError : std::runtime_error {
  EvaluatorError(const std::string& what, OptimizerRun partial_run)
      : std::runtime_error(what), partial(std::move(partial_run)) {}
  OptimizerRun partial;
};

TaxPolicy neighbor_policy(const TaxPolicy& current, const NeighborhoodSpec& spec,
                          Pcg32& rng);

// Downhill always; uphill with probability exp(-delta / temperature). The
// uniform draw happens only on the uphill branch.
bool sa_accept(double delta, double temperature, Pcg32& rng);

double cool(double t, double alpha);

// Geometric-cooling annealer: outer loops run while t >= t_final and budget
// remains, each with inner_iters candidate moves.
OptimizerRun simulated_annealing(const NoisyObjective& objective,
                                 const TaxPolicy& initial,
                                 const AnnealerConfig& config, Pcg32& rng);

// Strict-descent baseline: moves only when the candidate estimate is lower.
OptimizerRun stochastic_local_search(const NoisyObjective& objective,
                                     const TaxPolicy& initial,
                                     const SearchConfig& config, Pcg32& rng);

// eval_index,temperature,rate_1..rate_m,fixed_1..fixed_m,estimate,accepted.
// The initial evaluation is row 0 with a blank temperature.
void write_history_csv(std::ostream& out, const OptimizerRun& run);

// Summary with initial/best/final policies and values.
void to_json(nlohmann::json& j, const OptimizerRun& run);

void validate(const NeighborhoodSpec& spec);
void validate(const AnnealerConfig& config);
void validate(const SearchConfig& config);

}  // namespace polis

#endif  // POLIS_METAHEURISTICS_HPP
