#pragma once

#include <string>
#include <vector>

#include "vqnn/algorithms.hpp"

namespace vqnn {

// Quartiles by linear interpolation between order statistics (the same
// method as numpy's default percentile); whiskers extend to the farthest
// datum within 1.5*IQR of the quartiles, the rest are outliers.
struct BoxStats {
  int count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  std::vector<double> outliers;
};

double quantile_linear(std::vector<double> values, double q);
BoxStats box_stats(std::vector<double> values);

enum class SummaryMode { All, ImprovedOnly };

std::string to_string(SummaryMode mode);

// One whisker-plot group: final costs of a batch at one circuit label
// (QAOA depth p, or architecture draw index).
struct GroupSummary {
  std::string algorithm;
  int group = 0;  // p for QAOA, draw index for HEA
  SummaryMode mode = SummaryMode::All;
  BoxStats final_costs;
  double pct_improved = 0.0;
  double pct_deteriorated = 0.0;
};

// Stats over one batch of records from the same (algorithm, group). In
// ImprovedOnly mode only records with `improved` contribute to the box;
// an empty subset yields count 0. pct_improved is always over the full
// batch; pct_deteriorated is 0 here (a record cannot deteriorate against
// itself) and is meaningful only for paired comparisons.
GroupSummary summarize(const std::vector<RunRecord>& records, int group,
                       SummaryMode mode);

// Paired comparison of two batches with matching init seeds: percentage of
// pairs where `candidate` beats / trails `baseline` by more than the
// threshold. Throws if the seed sets differ.
struct PairedComparison {
  double pct_improved = 0.0;
  double pct_deteriorated = 0.0;
  int pairs = 0;
};

PairedComparison compare_paired(const std::vector<RunRecord>& candidate,
                                const std::vector<RunRecord>& baseline,
                                double threshold);

}  // namespace vqnn
