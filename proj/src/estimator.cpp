#include "polis/estimator.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "polis/errors.hpp"
#include "polis/normal.hpp"
#include "polis/parallel.hpp"

namespace polis {

ObjectiveEstimate estimate_expected_objective(const EconomyMap& map,
                                              const MarketParams& params,
                                              const TaxPolicy& policy,
                                              const SimConfig& config,
                                              std::size_t n_sim,
                                              std::uint64_t root_seed,
                                              double confidence, bool parallel) {
  if (n_sim < 1) throw InvalidConfig("estimate: n_sim must be >= 1");
  ObjectiveEstimate est;
  est.n = n_sim;
  est.confidence = confidence;
  est.replicate_values.resize(n_sim);
  parallel_for(n_sim, parallel, [&](std::size_t k) {
    SimConfig replicate = config;
    replicate.seed = derive_seed(root_seed, k);
    est.replicate_values[k] = simulate_objective(map, params, policy, replicate);
  });

  double sum = 0.0;
  for (const double v : est.replicate_values) sum += v;
  est.mean = sum / static_cast<double>(n_sim);
  if (n_sim > 1) {
    double ss = 0.0;
    for (const double v : est.replicate_values) {
      const double d = v - est.mean;
      ss += d * d;
    }
    est.std = std::sqrt(ss / static_cast<double>(n_sim - 1));
  }
  est.half_width = normal_two_sided_z(confidence) * est.std /
                   std::sqrt(static_cast<double>(n_sim));
  return est;
}

std::size_t required_sample_size(double std_guess, double half_width,
                                 double confidence) {
  if (!(std_guess > 0.0) || !(half_width > 0.0)) {
    throw InvalidConfig("required_sample_size: std and half-width must be positive");
  }
  const double z = normal_two_sided_z(confidence);
  const double n = std::ceil(std::pow(z * std_guess / half_width, 2.0));
  constexpr double kNormalityFloor = 30.0;
  return static_cast<std::size_t>(std::max(n, kNormalityFloor));
}

void to_json(nlohmann::json& j, const ObjectiveEstimate& e) {
  j = nlohmann::json{{"n", e.n},
                     {"mean", e.mean},
                     {"std", e.std},
                     {"half_width", e.half_width},
                     {"confidence", e.confidence}};
}

}  // namespace polis
