#include "vqnn/summary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace vqnn {

double quantile_linear(std::vector<double> values, double q) {
  if (values.empty())
    throw std::invalid_argument("quantile of an empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats of empty sample");
  std::sort(values.begin(), values.end());
  BoxStats s;
  s.count = static_cast<int>(values.size());
  s.q1 = quantile_linear(values, 0.25);
  s.median = quantile_linear(values, 0.5);
  s.q3 = quantile_linear(values, 0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_lo = s.q3;
  s.whisker_hi = s.q1;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      s.outliers.push_back(v);
    } else {
      s.whisker_lo = std::min(s.whisker_lo, v);
      s.whisker_hi = std::max(s.whisker_hi, v);
    }
  }
  return s;
}

std::string to_string(SummaryMode mode) {
  return mode == SummaryMode::All ? "all" : "improved_only";
}

GroupSummary summarize(const std::vector<RunRecord>& records, int group,
                       SummaryMode mode) {
  if (records.empty() && mode == SummaryMode::All)
    throw std::invalid_argument("summarize: no records");
  GroupSummary g;
  g.group = group;
  g.mode = mode;
  if (!records.empty()) g.algorithm = records.front().algorithm;

  std::vector<double> costs;
  int improved = 0;
  for (const RunRecord& r : records) {
    if (r.improved) ++improved;
    if (mode == SummaryMode::All || r.improved)
      costs.push_back(r.final_cost);
  }
  if (!records.empty())
    g.pct_improved = 100.0 * improved / static_cast<double>(records.size());
  if (!costs.empty()) g.final_costs = box_stats(std::move(costs));
  return g;
}

PairedComparison compare_paired(const std::vector<RunRecord>& candidate,
                                const std::vector<RunRecord>& baseline,
                                double threshold) {
  if (candidate.size() != baseline.size())
    throw std::invalid_argument("paired comparison needs equal batch sizes");
  std::map<std::uint64_t, double> baseline_costs;
  for (const RunRecord& r : baseline) baseline_costs[r.init_seed] = r.final_cost;

  PairedComparison cmp;
  int improved = 0, deteriorated = 0;
  for (const RunRecord& r : candidate) {
    const auto it = baseline_costs.find(r.init_seed);
    if (it == baseline_costs.end())
      throw std::invalid_argument(
          "paired comparison: no baseline run with init seed " +
          std::to_string(r.init_seed));
    const double delta = it->second - r.final_cost;
    if (delta > threshold) ++improved;
    if (-delta > threshold) ++deteriorated;
    ++cmp.pairs;
  }
  if (cmp.pairs > 0) {
    cmp.pct_improved = 100.0 * improved / cmp.pairs;
    cmp.pct_deteriorated = 100.0 * deteriorated / cmp.pairs;
  }
  return cmp;
}

}  // namespace vqnn
