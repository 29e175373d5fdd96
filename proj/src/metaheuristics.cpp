#include "polis/metaheuristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "polis/errors.hpp"

namespace polis {

namespace {

double clamp(double v, Interval bounds) {
  return std::min(std::max(v, bounds.lo), bounds.hi);
}

void check_within(const TaxPolicy& policy, const NeighborhoodSpec& spec,
                  const char* who) {
  for (const double r : policy.rate) {
    if (r < spec.rate_bounds.lo || r > spec.rate_bounds.hi) {
      throw InvalidConfig(std::string(who) + ": rate outside its feasible interval");
    }
  }
  for (const double f : policy.fixed) {
    if (f < spec.fixed_bounds.lo || f > spec.fixed_bounds.hi) {
      throw InvalidConfig(std::string(who) + ": fixed amount outside its feasible interval");
    }
  }
}

double evaluate_or_abort(const NoisyObjective& objective, const TaxPolicy& policy,
                         const OptimizerRun& partial) {
  try {
    return objective(policy);
  } catch (const std::exception& e) {
    throw EvaluatorError(std::string("objective evaluation failed: ") + e.what(),
                         partial);
  } catch (...) {
    throw EvaluatorError("objective evaluation failed", partial);
  }
}

}  // namespace

TaxPolicy neighbor_policy(const TaxPolicy& current, const NeighborhoodSpec& spec,
                          Pcg32& rng) {
  TaxPolicy next = current;
  for (double& r : next.rate) {
    r = clamp(rng.uniform_real(r - spec.rate_radius, r + spec.rate_radius),
              spec.rate_bounds);
  }
  for (double& f : next.fixed) {
    f = clamp(rng.uniform_real(f - spec.fixed_radius, f + spec.fixed_radius),
              spec.fixed_bounds);
  }
  return next;
}

bool sa_accept(double delta, double temperature, Pcg32& rng) {
  if (!(temperature > 0.0)) throw InvalidConfig("sa_accept: temperature must be positive");
  if (delta < 0.0) return true;
  return rng.next_double() < std::exp(-delta / temperature);
}

double cool(double t, double alpha) { return alpha * t; }

OptimizerRun simulated_annealing(const NoisyObjective& objective,
                                 const TaxPolicy& initial,
                                 const AnnealerConfig& config, Pcg32& rng) {
  validate(config);
  check_within(initial, config.neighborhood, "simulated_annealing");

  OptimizerRun run;
  run.initial_policy = initial;
  run.initial_value = evaluate_or_abort(objective, initial, run);
  run.evaluations = 1;
  run.best_policy = run.final_policy = initial;
  run.best_value = run.final_value = run.initial_value;

  double t = config.t0;
  std::size_t eval_index = 0;
  while (t >= config.t_final && run.evaluations < config.max_evaluations) {
    for (std::size_t inner = 0; inner < config.inner_iters; ++inner) {
      if (run.evaluations >= config.max_evaluations) break;
      TaxPolicy candidate = neighbor_policy(run.final_policy, config.neighborhood, rng);
      const double value = evaluate_or_abort(objective, candidate, run);
      ++run.evaluations;
      ++eval_index;
      const double delta = value - run.final_value;
      const bool accepted = sa_accept(delta, t, rng);
      run.history.push_back({eval_index, candidate, value, accepted, t});
      if (accepted) {
        run.final_policy = std::move(candidate);
        run.final_value = value;
        if (value < run.best_value) {
          run.best_value = value;
          run.best_policy = run.final_policy;
        }
      }
    }
    if (run.evaluations >= config.max_evaluations) break;
    t = cool(t, config.alpha);
    ++run.outer_loops;
  }
  return run;
}

OptimizerRun stochastic_local_search(const NoisyObjective& objective,
                                     const TaxPolicy& initial,
                                     const SearchConfig& config, Pcg32& rng) {
  validate(config);
  check_within(initial, config.neighborhood, "stochastic_local_search");

  OptimizerRun run;
  run.initial_policy = initial;
  run.initial_value = evaluate_or_abort(objective, initial, run);
  run.evaluations = 1;
  run.best_policy = run.final_policy = initial;
  run.best_value = run.final_value = run.initial_value;

  for (std::size_t it = 1; it <= config.iterations; ++it) {
    TaxPolicy candidate = neighbor_policy(run.final_policy, config.neighborhood, rng);
    const double value = evaluate_or_abort(objective, candidate, run);
    ++run.evaluations;
    const bool accepted = value < run.final_value;
    run.history.push_back({it, candidate, value, accepted, std::nullopt});
    if (accepted) {
      run.final_policy = std::move(candidate);
      run.final_value = value;
      run.best_policy = run.final_policy;
      run.best_value = run.final_value;
    }
  }
  return run;
}

void write_history_csv(std::ostream& out, const OptimizerRun& run) {
  const std::size_t m = run.initial_policy.n_markets();
  out << "eval_index,temperature";
  for (std::size_t j = 1; j <= m; ++j) out << ",rate_" << j;
  for (std::size_t j = 1; j <= m; ++j) out << ",fixed_" << j;
  out << ",estimate,accepted\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    out << buf;
  };
  auto row = [&](std::size_t index, std::optional<double> temperature,
                 const TaxPolicy& policy, double value, bool accepted) {
    out << index << ',';
    if (temperature) put(*temperature);
    for (const double r : policy.rate) {
      out << ',';
      put(r);
    }
    for (const double f : policy.fixed) {
      out << ',';
      put(f);
    }
    out << ',';
    put(value);
    out << ',' << (accepted ? 1 : 0) << '\n';
  };
  row(0, std::nullopt, run.initial_policy, run.initial_value, true);
  for (const auto& entry : run.history) {
    row(entry.eval_index, entry.temperature, entry.policy, entry.value,
        entry.accepted);
  }
}

void to_json(nlohmann::json& j, const OptimizerRun& run) {
  j = nlohmann::json{{"initial_policy", run.initial_policy},
                     {"initial_value", run.initial_value},
                     {"best_policy", run.best_policy},
                     {"best_value", run.best_value},
                     {"final_policy", run.final_policy},
                     {"final_value", run.final_value},
                     {"evaluations", run.evaluations},
                     {"outer_loops", run.outer_loops},
                     {"moves", run.history.size()}};
}

void validate(const NeighborhoodSpec& spec) {
  if (!(spec.rate_radius > 0.0) || !(spec.fixed_radius > 0.0)) {
    throw InvalidConfig("neighborhood radii must be positive");
  }
  if (!(spec.rate_bounds.lo < spec.rate_bounds.hi) ||
      !(spec.fixed_bounds.lo < spec.fixed_bounds.hi)) {
    throw InvalidConfig("feasible intervals must be non-degenerate");
  }
}

void validate(const AnnealerConfig& config) {
  validate(config.neighborhood);
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidConfig("cooling factor must lie in (0, 1)");
  }
  if (!(config.t0 > config.t_final) || !(config.t_final > 0.0)) {
    throw InvalidConfig("temperatures must satisfy t0 > t_final > 0");
  }
  if (config.inner_iters < 1) throw InvalidConfig("inner iterations must be >= 1");
  if (config.max_evaluations < 1) throw InvalidConfig("evaluation budget must be >= 1");
}

void validate(const SearchConfig& config) {
  validate(config.neighborhood);
  if (config.iterations < 1) throw InvalidConfig("iteration count must be >= 1");
}

}  // namespace polis
