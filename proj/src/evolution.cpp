#include "polis/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "polis/errors.hpp"

namespace polis {

namespace {

void mimic_distribution_into(std::span<const double> payoffs, std::vector<double>& out) {
  out.resize(payoffs.size());
  const double r_min = *std::min_element(payoffs.begin(), payoffs.end());
  double denom = 0.0;
  for (const double r : payoffs) denom += r - r_min;
  if (denom == 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(payoffs.size()));
  } else {
    for (std::size_t k = 0; k < payoffs.size(); ++k) {
      out[k] = (payoffs[k] - r_min) / denom;
    }
  }
}

// First index whose cumulative probability exceeds u; rounding can leave the
// cumulative sum marginally below u, in which case the last index with
// positive probability wins.
std::size_t pick_index(std::span<const double> probs, double u) {
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) last_positive = k;
    acc += probs[k];
    if (u < acc) return k;
  }
  return last_positive;
}

long long squared_tile_distance(GridPoint a, GridPoint b) {
  const long long dx = a.x - b.x;
  const long long dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double step_deviation(std::span<const double> quantities, double q_bar) {
  double ss = 0.0;
  for (const double q : quantities) {
    const double d = q - q_bar;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(quantities.size() - 1));
}

// Precomputed geography plus reusable buffers for one simulation run.
class SimEngine {
 public:
  SimEngine(const EconomyMap& map, const MarketParams& params,
            const TaxPolicy& policy, const SimConfig& config)
      : n_(map.n_firms()),
        m_(map.n_markets()),
        nb_(config.neighbor_count),
        mimic_prob_(config.mimic_prob),
        mutate_prob_(config.mutate_prob),
        intercept_(params.intercept),
        slope_(params.slope),
        rate1_(policy.rate),
        fixed_(policy.fixed) {
    for (double& r : rate1_) r += 1.0;
    cost_.resize(n_ * m_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        cost_[i * m_ + j] = params.transport_rate * distance(map.firms[i], map.markets[j]);
      }
    }
    neighbor_flat_.resize(n_ * nb_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto list = neighbors(map, i, nb_);
      std::copy(list.begin(), list.end(), neighbor_flat_.begin() + i * nb_);
    }
    choice_.resize(n_);
    next_choice_.resize(n_);
    payoff_.resize(n_);
    quantities_.resize(m_);
    prices_.resize(m_);
    nb_payoff_.reserve(nb_);
    nb_prob_.reserve(nb_);
  }

  void load_state(const StrategyState& state) {
    choice_ = state.choice;
    payoff_ = state.last_payoff;
  }

  void init(Pcg32& rng) {
    for (std::size_t i = 0; i < n_; ++i) {
      choice_[i] = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(m_)));
    }
    std::fill(payoff_.begin(), payoff_.end(), 0.0);
  }

  // One synchronous round; realizes quantities/prices/payoffs from the current
  // choices, then replaces the choices from that snapshot.
  double advance(Pcg32& rng) {
    std::fill(quantities_.begin(), quantities_.end(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) quantities_[static_cast<std::size_t>(choice_[i])] += 1.0;
    for (std::size_t j = 0; j < m_; ++j) prices_[j] = intercept_[j] - slope_[j] * quantities_[j];
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto j = static_cast<std::size_t>(choice_[i]);
      payoff_[i] = rate1_[j] * prices_[j] + fixed_[j] - cost_[i * m_ + j];
      total += payoff_[i];
    }
    const double mean_profit = total / static_cast<double>(n_);

    for (std::size_t i = 0; i < n_; ++i) {
      int cand = choice_[i];
      if (rng.next_double() < mimic_prob_) {
        const std::size_t* nb = neighbor_flat_.data() + i * nb_;
        nb_payoff_.resize(nb_);
        for (std::size_t k = 0; k < nb_; ++k) nb_payoff_[k] = payoff_[nb[k]];
        mimic_distribution_into(nb_payoff_, nb_prob_);
        const std::size_t pick = pick_index(nb_prob_, rng.next_double());
        cand = choice_[nb[pick]];
      }
      if (rng.next_double() < mutate_prob_) {
        cand = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(m_)));
      }
      next_choice_[i] = cand;
    }
    choice_.swap(next_choice_);
    return mean_profit;
  }

  std::span<const double> quantities() const { return quantities_; }
  std::span<const double> prices() const { return prices_; }

  StrategyState state() const {
    StrategyState s;
    s.choice = choice_;
    s.last_payoff = payoff_;
    return s;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t nb_;
  double mimic_prob_;
  double mutate_prob_;
  std::vector<double> intercept_;
  std::vector<double> slope_;
  std::vector<double> rate1_;  // 1 + rate_j
  std::vector<double> fixed_;
  std::vector<double> cost_;          // transport_rate * d_ij, firm-major
  std::vector<std::size_t> neighbor_flat_;
  std::vector<int> choice_;
  std::vector<int> next_choice_;
  std::vector<double> payoff_;
  std::vector<double> quantities_;
  std::vector<double> prices_;
  std::vector<double> nb_payoff_;
  std::vector<double> nb_prob_;
};

// Shared loop behind run_simulation and simulate_objective. The sink sees
// every step; the returned value is the windowed mean of step deviations,
// accumulated in step order.
template <typename Sink>
double run_core(const EconomyMap& map, const MarketParams& params,
                const TaxPolicy& policy, const SimConfig& config, Sink&& sink) {
  validate_run_inputs(map, params, policy, config);
  SimEngine engine(map, params, policy, config);
  Pcg32 rng(config.seed, kStreamSim);
  engine.init(rng);
  const double q_bar =
      static_cast<double>(map.n_firms()) / static_cast<double>(map.n_markets());
  double sum = 0.0;
  for (std::size_t t = 0; t < config.steps; ++t) {
    const double mean_profit = engine.advance(rng);
    if (t >= config.warmup && map.n_markets() >= 2) {
      sum += step_deviation(engine.quantities(), q_bar);
    }
    sink(t, engine.quantities(), engine.prices(), mean_profit);
  }
  return sum / static_cast<double>(config.steps - config.warmup);
}

int format_value(char* buf, std::size_t size, double v) {
  return std::snprintf(buf, size, "%.10g", v);
}

}  // namespace

StrategyState init_strategies(Pcg32& rng, std::size_t n_firms, std::size_t n_markets) {
  if (n_firms < 1 || n_markets < 1) {
    throw InvalidConfig("init_strategies: counts must be >= 1");
  }
  StrategyState s;
  s.choice.resize(n_firms);
  for (std::size_t i = 0; i < n_firms; ++i) {
    s.choice[i] = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(n_markets)));
  }
  s.last_payoff.assign(n_firms, 0.0);
  return s;
}

std::vector<std::size_t> neighbors(const EconomyMap& map, std::size_t firm, std::size_t n) {
  const std::size_t n_firms = map.n_firms();
  if (firm >= n_firms) throw InvalidConfig("neighbors: firm index out of range");
  if (n < 1 || n > n_firms) {
    throw InvalidConfig("neighbors: neighbor count must be in [1, n_firms]");
  }
  std::vector<long long> d2(n_firms);
  for (std::size_t j = 0; j < n_firms; ++j) {
    d2[j] = squared_tile_distance(map.firms[firm], map.firms[j]);
  }
  std::vector<std::size_t> order(n_firms);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Self sorts first among equal distances so it is always kept.
  auto before = [&](std::size_t a, std::size_t b) {
    if (d2[a] != d2[b]) return d2[a] < d2[b];
    if (a == firm) return true;
    if (b == firm) return false;
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n),
                    order.end(), before);
  order.resize(n);
  return order;
}

std::vector<double> mimic_distribution(std::span<const double> neighbor_payoffs) {
  if (neighbor_payoffs.empty()) {
    throw InvalidConfig("mimic_distribution: empty payoff list");
  }
  std::vector<double> out;
  mimic_distribution_into(neighbor_payoffs, out);
  return out;
}

std::pair<StrategyState, StepRecord> step(const EconomyMap& map,
                                          const MarketParams& params,
                                          const TaxPolicy& policy,
                                          const SimConfig& config,
                                          const StrategyState& state, Pcg32& rng,
                                          std::size_t t) {
  validate_run_inputs(map, params, policy, config);
  if (state.choice.size() != map.n_firms()) {
    throw InvalidConfig("step: state does not match the map's firm count");
  }
  for (const int c : state.choice) {
    if (c < 0 || static_cast<std::size_t>(c) >= map.n_markets()) {
      throw InvalidConfig("step: strategy refers to an unknown market");
    }
  }
  SimEngine engine(map, params, policy, config);
  engine.load_state(state);
  StepRecord record;
  record.t = t;
  record.mean_profit = engine.advance(rng);
  record.quantities.assign(engine.quantities().begin(), engine.quantities().end());
  record.prices.assign(engine.prices().begin(), engine.prices().end());
  return {engine.state(), record};
}

SimResult run_simulation(const EconomyMap& map, const MarketParams& params,
                         const TaxPolicy& policy, const SimConfig& config) {
  if (map.n_markets() < 2) {
    throw InvalidConfig("run_simulation: at least two markets required");
  }
  SimResult result;
  result.trace.reserve(config.steps);
  run_core(map, params, policy, config,
           [&](std::size_t t, std::span<const double> q, std::span<const double> p,
               double mean_profit) {
             StepRecord rec;
             rec.t = t;
             rec.quantities.assign(q.begin(), q.end());
             rec.prices.assign(p.begin(), p.end());
             rec.mean_profit = mean_profit;
             result.trace.push_back(std::move(rec));
           });
  result.objective = objective_from_trace(result.trace, config.warmup,
                                          map.n_firms(), map.n_markets());
  return result;
}

double simulate_objective(const EconomyMap& map, const MarketParams& params,
                          const TaxPolicy& policy, const SimConfig& config) {
  if (map.n_markets() < 2) {
    throw InvalidConfig("simulate_objective: at least two markets required");
  }
  return run_core(map, params, policy, config,
                  [](std::size_t, std::span<const double>, std::span<const double>,
                     double) {});
}

double objective_from_trace(std::span<const StepRecord> trace, std::size_t warmup,
                            std::size_t n_firms, std::size_t n_markets) {
  if (n_markets < 2) {
    throw InvalidConfig("objective_from_trace: at least two markets required");
  }
  if (trace.size() <= warmup) {
    throw InvalidConfig("objective_from_trace: empty objective window");
  }
  const double q_bar = static_cast<double>(n_firms) / static_cast<double>(n_markets);
  double sum = 0.0;
  for (std::size_t t = warmup; t < trace.size(); ++t) {
    if (trace[t].quantities.size() != n_markets) {
      throw InvalidConfig("objective_from_trace: record has wrong market count");
    }
    sum += step_deviation(trace[t].quantities, q_bar);
  }
  return sum / static_cast<double>(trace.size() - warmup);
}

void write_trace_csv(std::ostream& out, std::span<const StepRecord> trace,
                     std::size_t n_markets) {
  out << "t";
  for (std::size_t j = 1; j <= n_markets; ++j) out << ",Q_" << j;
  for (std::size_t j = 1; j <= n_markets; ++j) out << ",p_" << j;
  out << ",mean_profit\n";
  char buf[64];
  for (const auto& rec : trace) {
    out << rec.t;
    for (const double q : rec.quantities) {
      format_value(buf, sizeof buf, q);
      out << ',' << buf;
    }
    for (const double p : rec.prices) {
      format_value(buf, sizeof buf, p);
      out << ',' << buf;
    }
    format_value(buf, sizeof buf, rec.mean_profit);
    out << ',' << buf << '\n';
  }
}

void validate_run_inputs(const EconomyMap& map, const MarketParams& params,
                         const TaxPolicy& policy, const SimConfig& config) {
  validate(map);
  const std::size_t m = map.n_markets();
  if (params.intercept.size() != m || params.slope.size() != m) {
    throw InvalidConfig("market params must have one entry per market");
  }
  for (const double b : params.slope) {
    if (!(b > 0.0)) throw InvalidConfig("demand slope must be positive");
  }
  if (params.transport_rate < 0.0) {
    throw InvalidConfig("transport rate must be non-negative");
  }
  if (policy.rate.size() != m || policy.fixed.size() != m) {
    throw InvalidConfig("policy must have one entry per market");
  }
  if (config.mimic_prob < 0.0 || config.mimic_prob > 1.0 ||
      config.mutate_prob < 0.0 || config.mutate_prob > 1.0) {
    throw InvalidConfig("mimic and mutate probabilities must lie in [0, 1]");
  }
  if (config.neighbor_count < 1 || config.neighbor_count > map.n_firms()) {
    throw InvalidConfig("neighbor count must lie in [1, n_firms]");
  }
  if (config.steps < 1 || config.warmup >= config.steps) {
    throw InvalidConfig("warmup must be smaller than the step count");
  }
}

}  // namespace polis
