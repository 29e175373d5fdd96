#ifndef POLIS_EVOLUTION_HPP
#define POLIS_EVOLUTION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "polis/economy.hpp"
#include "polis/rng.hpp"

namespace polis {

struct SimConfig {
  std::size_t steps = 1000;
  std::size_t warmup = 100;         // first step of the objective window
  std::size_t neighbor_count = 4;   // N, self included
  double mimic_prob = 0.5;          // P_r
  double mutate_prob = 0.0;         // P_m
  MarketParams market_params = MarketParams::uniform(5);
  std::uint64_t seed = 0;
};

struct StrategyState {
  std::vector<int> choice;          // market index per firm
  std::vector<double> last_payoff;  // profit realized in the most recent round
  bool operator==(const StrategyState&) const = default;
};

struct StepRecord {
  std::size_t t = 0;
  std::vector<double> quantities;  // Q_j, sums to n_firms
  std::vector<double> prices;
  double mean_profit = 0.0;
  bool operator==(const StepRecord&) const = default;
};

struct SimResult {
  double objective = 0.0;
  std::vector<StepRecord> trace;  // one record per step
};

// Uniform independent market choice per firm, drawn in firm order;
// last_payoff starts at zero.
StrategyState init_strategies(Pcg32& rng, std::size_t n_firms, std::size_t n_markets);

// The n firms nearest to `firm` by Euclidean distance, self always first among
// zero-distance ties, remaining ties broken by ascending firm index. Ordered
// by that key.
std::vector<std::size_t> neighbors(const EconomyMap& map, std::size_t firm, std::size_t n);

// Probability of copying each neighbor: excess payoff over the worst neighbor,
// normalized. All payoffs equal degenerates to 0/0 and falls back to uniform.
std::vector<double> mimic_distribution(std::span<const double> neighbor_payoffs);

// One synchronous round: realize quantities, prices and payoffs from the
// current choices, then form every firm's next choice from the same snapshot.
// Per firm, in index order, the draws are: mimic coin; neighbor pick when the
// coin hits; mutate coin; uniform market when that coin hits.
std::pair<StrategyState, StepRecord> step(const EconomyMap& map,
                                          const MarketParams& params,
                                          const TaxPolicy& policy,
                                          const SimConfig& config,
                                          const StrategyState& state, Pcg32& rng,
                                          std::size_t t = 0);

// init_strategies followed by config.steps rounds, all driven by a single
// Pcg32(config.seed, kStreamSim) stream. The objective is
// objective_from_trace over [warmup, steps).
SimResult run_simulation(const EconomyMap& map, const MarketParams& params,
                         const TaxPolicy& policy, const SimConfig& config);

// Objective only; identical arithmetic to run_simulation().objective without
// materializing the trace. This is what the estimator loops over.
double simulate_objective(const EconomyMap& map, const MarketParams& params,
                          const TaxPolicy& policy, const SimConfig& config);

// Mean over the window [warmup, trace length) of the per-step cross-market
// sample deviation sqrt(sum_j (Q_j - Qbar)^2 / (m - 1)), Qbar = n_firms / m.
double objective_from_trace(std::span<const StepRecord> trace, std::size_t warmup,
                            std::size_t n_firms, std::size_t n_markets);

// Header t,Q_1..Q_m,p_1..p_m,mean_profit; one row per step.
void write_trace_csv(std::ostream& out, std::span<const StepRecord> trace,
                     std::size_t n_markets);

// Throws InvalidConfig on dimension mismatches or out-of-range parameters.
void validate_run_inputs(const EconomyMap& map, const MarketParams& params,
                         const TaxPolicy& policy, const SimConfig& config);

}  // namespace polis

#endif  // POLIS_EVOLUTION_HPP
