#ifndef POLIS_ESTIMATOR_HPP
#define POLIS_ESTIMATOR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polis/economy.hpp"
#include "polis/evolution.hpp"

namespace polis {

struct ObjectiveEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;         // unbiased; 0 by convention for n = 1
  double half_width = 0.0;  // z * std / sqrt(n) at `confidence`
  double confidence = 0.95;
  std::vector<double> replicate_values;
};

// Monte-Carlo estimate of the expected objective under `policy`. Replicate k
// runs with seed derive_seed(root_seed, k); values are aggregated in replicate
// order, so the result does not depend on scheduling and `parallel` cannot
// change it.
ObjectiveEstimate estimate_expected_objective(const EconomyMap& map,
                                              const MarketParams& params,
                                              const TaxPolicy& policy,
                                              const SimConfig& config,
                                              std::size_t n_sim,
                                              std::uint64_t root_seed,
                                              double confidence = 0.95,
                                              bool parallel = false);

// Smallest n with z * std_guess / sqrt(n) <= half_width, floored at 30 (the
// normal interval is only trusted for n > 30).
std::size_t required_sample_size(double std_guess, double half_width,
                                 double confidence);

// {"n", "mean", "std", "half_width", "confidence"}.
void to_json(nlohmann::json& j, const ObjectiveEstimate& e);

}  // namespace polis

#endif  // POLIS_ESTIMATOR_HPP
