#pragma once

#include <span>
#include <string>

namespace crowdsel {

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample std (n-1 denominator), 0 when n == 1
  double worst = 0.0;   // minimum
  double best = 0.0;    // maximum
};

// Throws std::invalid_argument on empty input.
SummaryStats summary_stats(std::span<const double> values);

struct TestOutcome {
  double u_statistic = 0.0;  // Mann-Whitney U of the first sample
  double p_value = 1.0;      // two-sided, clamped to [0,1]
  std::string method;        // "exact" | "normal-approximation"
  bool significant_at_005 = false;
};

// Mann-Whitney / Wilcoxon rank-sum test on midranks. The exact two-sided p
// is computed by counting rank splits when both samples have at most 12
// values and the pooled values carry no ties; otherwise the normal
// approximation with tie and continuity corrections is used.
TestOutcome wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

}  // namespace crowdsel
