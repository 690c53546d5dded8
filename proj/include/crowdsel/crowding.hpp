#pragma once

#include <string>
#include <vector>

#include "crowdsel/dataset.hpp"

namespace crowdsel {

// Per-feature crowding total. Features that sit at the minimum or maximum
// of some sample would receive an infinite per-sample distance; instead we
// count those occurrences and order scores lexicographically
// (boundary_count, finite_sum), which keeps extremes first and the order
// total.
struct CrowdingScore {
  int boundary_count = 0;
  double finite_sum = 0.0;

  friend constexpr bool operator==(const CrowdingScore&, const CrowdingScore&) = default;
  friend constexpr bool operator<(const CrowdingScore& a, const CrowdingScore& b) {
    if (a.boundary_count != b.boundary_count) return a.boundary_count < b.boundary_count;
    return a.finite_sum < b.finite_sum;
  }
  friend constexpr bool operator>(const CrowdingScore& a, const CrowdingScore& b) { return b < a; }
};

// Crowding distance of every feature over the sample "objectives".
//
// For each sample row: features are sorted ascending by value (ties by
// feature index); the first and last sorted features get a boundary credit;
// each interior feature accumulates the gap between its sorted neighbours
// normalised by the row range. Rows with zero range contribute nothing.
// Contributions are summed in sample order regardless of thread count, so
// results are bit-identical to a sequential run.
//
// Throws std::invalid_argument when the dataset has fewer than 2 features.
std::vector<CrowdingScore> crowding_scores(const Dataset& ds);

struct FeatureRanking {
  std::vector<int> order;               // most-preferred first
  std::vector<double> values;           // per original feature index (scalar methods)
  std::vector<CrowdingScore> crowding;  // per original feature index (crowding only)
  std::string method;
};

// Descending sort of features by score; equal scores keep ascending
// feature-index order. Throws std::invalid_argument on empty input.
FeatureRanking rank_descending(const std::vector<CrowdingScore>& scores);
FeatureRanking rank_descending(const std::vector<double>& scores, std::string method);

}  // namespace crowdsel
