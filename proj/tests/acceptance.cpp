// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "paper_tables.hpp"
#include "polis/campaign.hpp"
#include "polis/economy.hpp"
#include "polis/evolution.hpp"
#include "polis/metaheuristics.hpp"
#include "polis/rng.hpp"
#include "polis/stats.hpp"

using namespace polis;
using namespace polis_tests;

namespace {

int failures = 0;

void report(int number, const std::string& title, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
              title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// --- 1. summary statistics and confidence intervals from the paper tables ---

void criterion_statistics() {
  struct Expect {
    const std::vector<double>* data;
    double mean, std;
    double lo95, hi95, lo98, hi98;
  };
  const Expect rows[] = {
      {&kSearchEconomy1, 4.464, 0.831, 4.167, 4.762, 4.112, 4.817},
      {&kAnnealingEconomy1, 2.912, 0.916, 2.584, 3.239, 2.522, 3.301},
      {&kSearchEconomy2, 4.301, 0.718, 4.044, 4.557, 3.996, 4.605},
      {&kAnnealingEconomy2, 2.715, 1.589, 2.146, 3.284, 2.040, 3.390},
  };
  bool pass = true;
  double worst_summary = 0.0, worst_bound = 0.0;
  for (const auto& row : rows) {
    const SampleSummary s = summarize(*row.data);
    worst_summary = std::max({worst_summary, std::fabs(s.mean - row.mean),
                              std::fabs(s.std - row.std)});
    pass &= std::fabs(s.mean - row.mean) <= 0.001;
    pass &= std::fabs(s.std - row.std) <= 0.001;
    const auto [lo95, hi95] = confidence_interval(s, 0.95);
    const auto [lo98, hi98] = confidence_interval(s, 0.98);
    for (const auto [got, want] :
         {std::pair{lo95, row.lo95}, {hi95, row.hi95}, {lo98, row.lo98},
          {hi98, row.hi98}}) {
      worst_bound = std::max(worst_bound, std::fabs(got - want));
      pass &= std::fabs(got - want) <= 0.01;
    }
  }
  report(1, "summary statistics and CI tables reproduced", pass,
         fmt("max summary deviation %.2g (tol 1e-3), max CI bound deviation "
             "%.2g (tol 1e-2)",
             worst_summary, worst_bound));
}

// --- 2. one-sided hypothesis tests at alpha = 0.001 ---

void criterion_hypothesis_tests() {
  const auto r1 =
      one_sided_test(summarize(kSearchEconomy1), summarize(kAnnealingEconomy1));
  const auto r2 =
      one_sided_test(summarize(kSearchEconomy2), summarize(kAnnealingEconomy2));
  const bool pass = r1.p < 0.001 && r2.p < 0.001;
  report(2, "one-sided tests reject at alpha = 0.001", pass,
         fmt("economy 1: z = %.3f, p = %.3g; economy 2: z = %.3f, p = %.3g",
             r1.z, r1.p, r2.z, r2.p));
}

// --- 3. fixed-policy sample means from the six-column table ---

void criterion_table_means() {
  const double no_tax = summarize(fixed_policy_column(0)).mean;
  const double second = summarize(fixed_policy_column(1)).mean;
  const bool pass =
      std::fabs(no_tax - 4.0108) <= 0.001 && std::fabs(second - 6.3299) <= 0.001;
  report(3, "fixed-policy column means reproduced", pass,
         fmt("no-tax mean %.4f (want 4.0108), second-set mean %.4f (want 6.3299)",
             no_tax, second));
}

// --- 4. conservation and bit-level determinism over random instances ---

void criterion_conservation_determinism() {
  Pcg32 gen(4040);
  bool conserved = true, deterministic = true;
  for (int trial = 0; trial < 20; ++trial) {
    const EconomyMap map = generate_map(gen.next_u64(), 100, 5, 100);
    TaxPolicy policy = TaxPolicy::zero(5);
    for (auto& r : policy.rate) r = gen.uniform_real(-0.25, 0.25);
    for (auto& f : policy.fixed) f = gen.uniform_real(-50.0, 50.0);
    SimConfig config;
    config.steps = 300;
    config.warmup = 100;
    config.market_params = MarketParams::uniform(5);
    config.seed = gen.next_u64();
    const SimResult a = run_simulation(map, config.market_params, policy, config);
    const SimResult b = run_simulation(map, config.market_params, policy, config);
    deterministic &= a.objective == b.objective && a.trace == b.trace;
    for (const auto& rec : a.trace) {
      double total = 0.0;
      for (const double q : rec.quantities) total += q;
      conserved &= total == 100.0;
    }
  }
  report(4, "quantity conservation and bit-identical reruns", conserved && deterministic,
         fmt("20 random (map, policy, seed) triples at 300 steps: conservation %s, "
             "determinism %s",
             conserved ? "ok" : "violated", deterministic ? "ok" : "violated"));
}

// --- 5. mimic rule against brute-force enumeration ---

void criterion_mimic_oracle() {
  Pcg32 gen(5050);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen.uniform_int(8);
    std::vector<double> payoffs(n);
    if (trial % 7 == 0) {
      const double v = gen.uniform_real(-100.0, 100.0);
      std::fill(payoffs.begin(), payoffs.end(), v);
    } else {
      for (auto& r : payoffs) r = gen.uniform_real(-100.0, 100.0);
    }
    const auto got = mimic_distribution(payoffs);
    // Brute force: excess over the minimum, normalized, in long double.
    long double r_min = payoffs[0];
    for (const double r : payoffs) r_min = std::min<long double>(r_min, r);
    long double denom = 0.0L;
    for (const double r : payoffs) denom += r - r_min;
    for (std::size_t k = 0; k < n; ++k) {
      const long double want =
          denom == 0.0L ? 1.0L / static_cast<long double>(n)
                        : (payoffs[k] - r_min) / denom;
      worst = std::max(worst, std::fabs(got[k] - static_cast<double>(want)));
    }
  }
  report(5, "mimic distribution matches brute-force enumeration", worst < 1e-12,
         fmt("1000 random payoff vectors, max deviation %.3g (tol 1e-12)", worst));
}

// --- 6. annealing acceptance law ---

void criterion_acceptance_law() {
  Pcg32 rng(6060);
  bool downhill_ok = true;
  for (int trial = 0; trial < 10000; ++trial) {
    downhill_ok &= sa_accept(-1e-9 - trial, 1.0, rng);
  }
  const int trials = 100000;
  int accepted = 0;
  for (int trial = 0; trial < trials; ++trial) {
    if (sa_accept(2.0, 1.0, rng)) ++accepted;
  }
  const double freq = static_cast<double>(accepted) / trials;
  const double want = std::exp(-2.0);
  const double se = std::sqrt(want * (1.0 - want) / trials);
  const bool pass = downhill_ok && std::fabs(freq - want) <= 3.0 * se;
  report(6, "acceptance frequency of exp(-delta/t)", pass,
         fmt("downhill 100%%: %s; uphill freq %.4f vs e^-2 = %.4f (3 se = %.4f)",
             downhill_ok ? "yes" : "no", freq, want, 3.0 * se));
}

// --- 7. learning raises mean profit (trajectory shape) ---

void criterion_profit_shape() {
  const EconomyMap map = generate_map(1, 100, 5, 100);
  SimConfig config;
  config.steps = 1000;
  config.warmup = 100;
  config.market_params = MarketParams::uniform(5);
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    config.seed = seed;
    const SimResult result =
        run_simulation(map, config.market_params, TaxPolicy::zero(5), config);
    double early = 0.0, late = 0.0;
    for (std::size_t t = 0; t < 10; ++t) early += result.trace[t].mean_profit;
    for (std::size_t t = 900; t < 1000; ++t) late += result.trace[t].mean_profit;
    improved += (late / 100.0) > (early / 10.0);
  }
  report(7, "late mean profit exceeds early mean profit", improved >= 9,
         fmt("%d of 10 seeded runs improved (need >= 9)", improved));
}

// --- 8. desk-scale optimizer comparison ---

void criterion_desk_comparison() {
  const EconomyMap map = generate_map(1, 100, 5, 100);
  CampaignSpec spec;
  spec.params = MarketParams::uniform(5);
  spec.sim.steps = 300;
  spec.sim.warmup = 100;
  spec.sim.market_params = spec.params;
  spec.n_sim = 50;
  spec.executions = 10;

  spec.kind = OptimizerKind::kSimulatedAnnealing;
  spec.annealer.max_evaluations = 210;
  spec.root_seed = 1001;
  const auto sa_runs = run_campaign(map, spec, true);

  spec.kind = OptimizerKind::kLocalSearch;
  spec.search.iterations = 200;
  spec.root_seed = 2002;
  const auto sls_runs = run_campaign(map, spec, true);

  std::vector<double> sa_best, sls_best;
  for (const auto& run : sa_runs) sa_best.push_back(run.best_value);
  for (const auto& run : sls_runs) sls_best.push_back(run.best_value);
  const SampleSummary sa = summarize(sa_best);
  const SampleSummary sls = summarize(sls_best);
  const TestResult test = one_sided_test(sls, sa);
  const bool pass = sa.mean < sls.mean && test.p < 0.05;
  report(8, "annealing beats local search at desk scale", pass,
         fmt("SA mean %.4f vs SLS mean %.4f over 10+10 executions; one-sided "
             "p = %.4g (need < 0.05)",
             sa.mean, sls.mean, test.p));
}

// --- 9. dispersion objective against an independent evaluation ---

void criterion_objective_oracle() {
  Pcg32 gen(9090);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + gen.uniform_int(6);
    const std::size_t n_firms = 5 + gen.uniform_int(300);
    const std::size_t steps = 2 + gen.uniform_int(80);
    const std::size_t warmup = gen.uniform_int(static_cast<std::uint32_t>(steps));
    std::vector<StepRecord> trace(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      trace[t].t = t;
      trace[t].quantities.resize(m);
      for (auto& q : trace[t].quantities) q = gen.uniform_real(0.0, 80.0);
      trace[t].prices.assign(m, 0.0);
    }
    const long double q_bar =
        static_cast<long double>(n_firms) / static_cast<long double>(m);
    long double acc = 0.0L;
    for (std::size_t t = warmup; t < steps; ++t) {
      long double ss = 0.0L;
      for (const double q : trace[t].quantities) ss += (q - q_bar) * (q - q_bar);
      acc += sqrtl(ss / static_cast<long double>(m - 1));
    }
    const double want =
        static_cast<double>(acc / static_cast<long double>(steps - warmup));
    const double got = objective_from_trace(trace, warmup, n_firms, m);
    worst = std::max(worst, std::fabs(got - want));
  }
  report(9, "objective matches an independently coded evaluation", worst < 1e-10,
         fmt("100 synthetic traces, max deviation %.3g (tol 1e-10)", worst));
}

// --- 10. geometric schedule arithmetic ---

void criterion_schedule() {
  AnnealerConfig config;  // t0 = 10, alpha = 0.8, t_final = 0.001, 10 inner
  config.max_evaluations = 1000000;
  Pcg32 rng(1010);
  const auto run =
      simulated_annealing([](const TaxPolicy&) { return 1.0; },
                          TaxPolicy::zero(5), config, rng);
  const bool pass = run.outer_loops == 42 && run.evaluations == 421;
  report(10, "uncapped annealer runs exactly 42 outer loops", pass,
         fmt("outer loops %zu (want 42), evaluations %zu (want 421)",
             run.outer_loops, run.evaluations));
}

}  // namespace

int main() {
  criterion_statistics();
  criterion_hypothesis_tests();
  criterion_table_means();
  criterion_conservation_determinism();
  criterion_mimic_oracle();
  criterion_acceptance_law();
  criterion_profit_shape();
  criterion_desk_comparison();
  criterion_objective_oracle();
  criterion_schedule();
  if (failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
