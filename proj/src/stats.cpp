#include "polis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polis/errors.hpp"
#include "polis/normal.hpp"

namespace polis {

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

SampleSummary summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidConfig("summarize: empty sample");
  SampleSummary s;
  s.n = values.size();
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (const double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

std::pair<double, double> confidence_interval(const SampleSummary& summary,
                                              double confidence) {
  if (summary.n < 2) {
    throw InvalidConfig("confidence_interval: at least two observations required");
  }
  const double half = normal_two_sided_z(confidence) * summary.std /
                      std::sqrt(static_cast<double>(summary.n));
  return {summary.mean - half, summary.mean + half};
}

TestResult one_sided_test(const SampleSummary& a, const SampleSummary& b) {
  if (a.n < 2 || b.n < 2) {
    throw InvalidConfig("one_sided_test: both samples need at least two observations");
  }
  const double se = std::sqrt(a.std * a.std / static_cast<double>(a.n) +
                              b.std * b.std / static_cast<double>(b.n));
  TestResult r;
  if (se == 0.0) {
    r.z = 0.0;
    r.p = 0.5;
    if (a.mean > b.mean) {
      r.z = std::numeric_limits<double>::infinity();
      r.p = 0.0;
    } else if (a.mean < b.mean) {
      r.z = -std::numeric_limits<double>::infinity();
      r.p = 1.0;
    }
    return r;
  }
  r.z = (a.mean - b.mean) / se;
  r.p = normal_upper_tail(r.z);
  return r;
}

StatsReport build_stats_report(std::span<const std::vector<double>> samples,
                               std::span<const std::string> labels) {
  if (samples.empty()) throw InvalidConfig("stats report: no samples");
  if (labels.size() != samples.size()) {
    throw InvalidConfig("stats report: one label per sample required");
  }
  StatsReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    report.labels.push_back(labels[i]);
    const SampleSummary s = summarize(samples[i]);
    report.summaries.push_back(s);
    report.ci95.push_back(confidence_interval(s, 0.95));
    report.ci98.push_back(confidence_interval(s, 0.98));
    if (s.n <= 30) {
      report.caveats.push_back("sample '" + labels[i] + "' has n = " +
                               std::to_string(s.n) +
                               "; the normal interval is only trusted for n > 30");
    }
  }
  if (samples.size() == 2) {
    report.test = one_sided_test(report.summaries[0], report.summaries[1]);
  }
  return report;
}

std::string render_text(const StatsReport& report) {
  static constexpr const char* kRowNames[] = {
      "Sample mean",  "Sample deviation", "max p.i. 95%",
      "min p.i. 95%", "max p.i. 98%",     "min p.i. 98%"};
  const std::size_t cols = report.summaries.size();
  std::vector<std::vector<std::string>> cells(6, std::vector<std::string>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    cells[0][c] = fixed4(report.summaries[c].mean);
    cells[1][c] = fixed4(report.summaries[c].std);
    cells[2][c] = fixed4(report.ci95[c].second);
    cells[3][c] = fixed4(report.ci95[c].first);
    cells[4][c] = fixed4(report.ci98[c].second);
    cells[5][c] = fixed4(report.ci98[c].first);
  }
  std::size_t name_width = 0;
  for (const char* name : kRowNames) name_width = std::max(name_width, std::string(name).size());
  std::vector<std::size_t> col_width(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    col_width[c] = report.labels[c].size();
    for (const auto& row : cells) col_width[c] = std::max(col_width[c], row[c].size());
  }
  std::ostringstream out;
  out << std::string(name_width, ' ');
  for (std::size_t c = 0; c < cols; ++c) {
    out << "  " << std::string(col_width[c] - report.labels[c].size(), ' ')
        << report.labels[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < 6; ++r) {
    out << kRowNames[r] << std::string(name_width - std::string(kRowNames[r]).size(), ' ');
    for (std::size_t c = 0; c < cols; ++c) {
      out << "  " << std::string(col_width[c] - cells[r][c].size(), ' ') << cells[r][c];
    }
    out << '\n';
  }
  if (report.test) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.4f", report.test->z);
    out << "\none-sided z-test of mean(" << report.labels[0] << ") > mean("
        << report.labels[1] << "): z = " << buf;
    std::snprintf(buf, sizeof buf, "%.4g", report.test->p);
    out << ", p = " << buf << '\n';
  }
  for (const auto& caveat : report.caveats) out << "note: " << caveat << '\n';
  return out.str();
}

void to_json(nlohmann::json& j, const StatsReport& report) {
  j = nlohmann::json::object();
  auto& samples = j["samples"] = nlohmann::json::array();
  for (std::size_t c = 0; c < report.summaries.size(); ++c) {
    samples.push_back(nlohmann::json{
        {"label", report.labels[c]},
        {"n", report.summaries[c].n},
        {"mean", report.summaries[c].mean},
        {"std", report.summaries[c].std},
        {"ci95", {report.ci95[c].first, report.ci95[c].second}},
        {"ci98", {report.ci98[c].first, report.ci98[c].second}},
    });
  }
  if (report.test) {
    j["test"] = nlohmann::json{{"z", report.test->z}, {"p", report.test->p}};
  }
  if (!report.caveats.empty()) j["caveats"] = report.caveats;
}

}  // namespace polis
