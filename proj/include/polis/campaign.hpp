#ifndef POLIS_CAMPAIGN_HPP
#define POLIS_CAMPAIGN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polis/economy.hpp"
#include "polis/estimator.hpp"
#include "polis/evolution.hpp"
#include "polis/metaheuristics.hpp"

namespace polis {

enum class OptimizerKind { kSimulatedAnnealing, kLocalSearch };

// One policy-search campaign: K independent optimizer executions over the
// Monte-Carlo objective estimator.
struct CampaignSpec {
  MarketParams params;
  SimConfig sim;        // per-replicate settings; its seed field is ignored
  std::size_t n_sim = 10000;
  double confidence = 0.95;
  OptimizerKind kind = OptimizerKind::kSimulatedAnnealing;
  AnnealerConfig annealer;
  SearchConfig search;
  TaxPolicy initial;    // empty means the zero policy
  // Draw each execution's initial policy uniformly from the feasible box
  // instead of using `initial`.
  bool random_initial = false;
  std::size_t executions = 1;
  std::uint64_t root_seed = 0;
};

// Evaluator over estimate_expected_objective. Call i (0-based) estimates with
// replicate root derive_seed(derive_seed(eval_seed, i), k) for replicate k.
NoisyObjective make_estimating_objective(const EconomyMap& map,
                                         const MarketParams& params,
                                         const SimConfig& sim, std::size_t n_sim,
                                         std::uint64_t eval_seed,
                                         bool parallel_replicates);

// Execution `index`: optimizer rng and evaluator seeds both derive from
// derive_seed(spec.root_seed, index), so executions are independent and may
// run in any order or in parallel without changing results.
OptimizerRun run_single_execution(const EconomyMap& map, const CampaignSpec& spec,
                                  std::size_t index, bool parallel_replicates);

std::vector<OptimizerRun> run_campaign(const EconomyMap& map,
                                       const CampaignSpec& spec, bool parallel);

}  // namespace polis

#endif  // POLIS_CAMPAIGN_HPP
