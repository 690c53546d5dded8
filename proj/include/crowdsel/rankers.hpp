#pragma once

#include <string>
#include <vector>

#include "crowdsel/dataset.hpp"

namespace crowdsel {

// Per-feature score, higher = more preferred.
struct ScoreVector {
  std::vector<double> values;
  std::string method;
};

// |population Pearson correlation| between each feature and the encoded
// label values. Constant features score 0.
ScoreVector pearson_scores(const Dataset& ds);

// Population variance (divide by m) of each feature.
ScoreVector variance_scores(const Dataset& ds);

// ReliefF weights: every instance is a target; k nearest hits and, per
// other class, k nearest prior-weighted misses; diff is |a-b| normalised by
// the feature's full range; neighbour distance is the Manhattan sum of
// diffs. Constant features contribute diff 0 and score 0.
//
// Throws DatasetError when some class has fewer than k_neighbors + 1
// members (the class name is reported).
ScoreVector relieff_scores(const Dataset& ds, int k_neighbors);

// Largest k_neighbors usable on this dataset: smallest class size minus 1.
int max_relieff_k(const Dataset& ds);

}  // namespace crowdsel
