#include "polis/campaign.hpp"

#include <memory>

#include "polis/parallel.hpp"

namespace polis {

namespace {

// Substream tags under one execution seed.
constexpr std::uint64_t kOptimizerDraws = 0;
constexpr std::uint64_t kEvaluationRoots = 1;
constexpr std::uint64_t kInitialDraw = 2;

TaxPolicy draw_initial(const NeighborhoodSpec& spec, std::size_t n_markets,
                       std::uint64_t seed) {
  Pcg32 rng(seed, kStreamOptimizer);
  TaxPolicy policy = TaxPolicy::zero(n_markets);
  for (auto& r : policy.rate) {
    r = rng.uniform_real(spec.rate_bounds.lo, spec.rate_bounds.hi);
  }
  for (auto& f : policy.fixed) {
    f = rng.uniform_real(spec.fixed_bounds.lo, spec.fixed_bounds.hi);
  }
  return policy;
}

}  // namespace

NoisyObjective make_estimating_objective(const EconomyMap& map,
                                         const MarketParams& params,
                                         const SimConfig& sim, std::size_t n_sim,
                                         std::uint64_t eval_seed,
                                         bool parallel_replicates) {
  auto counter = std::make_shared<std::uint64_t>(0);
  return [=](const TaxPolicy& policy) {
    const std::uint64_t call = (*counter)++;
    const ObjectiveEstimate est =
        estimate_expected_objective(map, params, policy, sim, n_sim,
                                    derive_seed(eval_seed, call), 0.95,
                                    parallel_replicates);
    return est.mean;
  };
}

OptimizerRun run_single_execution(const EconomyMap& map, const CampaignSpec& spec,
                                  std::size_t index, bool parallel_replicates) {
  const std::uint64_t exec_seed = derive_seed(spec.root_seed, index);
  Pcg32 rng(derive_seed(exec_seed, kOptimizerDraws), kStreamOptimizer);
  const NoisyObjective objective = make_estimating_objective(
      map, spec.params, spec.sim, spec.n_sim,
      derive_seed(exec_seed, kEvaluationRoots), parallel_replicates);
  const NeighborhoodSpec& box = spec.kind == OptimizerKind::kSimulatedAnnealing
                                    ? spec.annealer.neighborhood
                                    : spec.search.neighborhood;
  const TaxPolicy initial =
      spec.random_initial
          ? draw_initial(box, map.n_markets(), derive_seed(exec_seed, kInitialDraw))
          : (spec.initial.n_markets() == 0 ? TaxPolicy::zero(map.n_markets())
                                           : spec.initial);
  if (spec.kind == OptimizerKind::kSimulatedAnnealing) {
    return simulated_annealing(objective, initial, spec.annealer, rng);
  }
  return stochastic_local_search(objective, initial, spec.search, rng);
}

std::vector<OptimizerRun> run_campaign(const EconomyMap& map,
                                       const CampaignSpec& spec, bool parallel) {
  std::vector<OptimizerRun> runs(spec.executions);
  // Parallelize across executions when there are several; otherwise let the
  // single execution parallelize its estimator replicates.
  const bool across_executions = parallel && spec.executions > 1;
  parallel_for(spec.executions, across_executions, [&](std::size_t e) {
    runs[e] = run_single_execution(map, spec, e, parallel && !across_executions);
  });
  return runs;
}

}  // namespace polis
