#ifndef POLIS_STATS_HPP
#define POLIS_STATS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace polis {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;  // unbiased, divisor n - 1; 0 by convention for n = 1
};

struct TestResult {
  double z = 0.0;
  double p = 0.0;  // upper-tail probability
};

SampleSummary summarize(std::span<const double> values);

// mean -+ z * std / sqrt(n). Requires n >= 2.
std::pair<double, double> confidence_interval(const SampleSummary& summary,
                                              double confidence);

// Two-sample z statistic (mean_a - mean_b) / sqrt(std_a^2/n_a + std_b^2/n_b)
// with its upper-tail p; small p is evidence that mean_a exceeds mean_b.
TestResult one_sided_test(const SampleSummary& a, const SampleSummary& b);

// Summary block with 95% and 98% intervals per labeled sample; a test is
// attached when exactly two samples are present.
struct StatsReport {
  std::vector<std::string> labels;
  std::vector<SampleSummary> summaries;
  std::vector<std::pair<double, double>> ci95;
  std::vector<std::pair<double, double>> ci98;
  std::optional<TestResult> test;
  std::vector<std::string> caveats;  // normal-approximation warnings for n <= 30
};

StatsReport build_stats_report(std::span<const std::vector<double>> samples,
                               std::span<const std::string> labels);

// Aligned text table, values rendered with four decimals.
std::string render_text(const StatsReport& report);

void to_json(nlohmann::json& j, const StatsReport& report);

}  // namespace polis

#endif  // POLIS_STATS_HPP
