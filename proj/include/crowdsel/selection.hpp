#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crowdsel/crowding.hpp"
#include "crowdsel/dataset.hpp"
#include "crowdsel/eval.hpp"

namespace crowdsel {

struct SelectionResult {
  struct Step {
    int feature = -1;
    double fitness = 0.0;
    bool accepted = false;
  };

  std::vector<int> selected;   // wrapper: acceptance order; filter: ranking order
  double best_accuracy = 0.0;  // wrapper only: fitness of the last accepted step
  std::vector<Step> trace;     // wrapper only: one record per evaluated feature
  std::string method;          // "filter" | "wrapper"
  std::string ranking_method;
};

// First k entries of the ranking, in ranking order. Throws
// std::invalid_argument when k is outside [1, n].
SelectionResult filter_select(const FeatureRanking& ranking, int k);

// Greedy forward pass over the ranking order: tentatively add each feature,
// keep it iff CV accuracy strictly improves on the best so far (which
// starts at 0). One fold assignment is drawn from `seed` and reused for
// every fitness evaluation of the run. An accuracy_threshold in (0, 100]
// stops the loop once the best accuracy reaches it.
SelectionResult wrapper_select(const Dataset& ds, const FeatureRanking& ranking,
                               const ClassifierConfig& classifier, int folds,
                               std::uint64_t seed,
                               std::optional<double> accuracy_threshold = std::nullopt);

// Independent wrapper runs, one per repetition seed. `best_run` is the
// repetition with the highest best_accuracy (lowest index on ties).
struct WrapperRuns {
  std::vector<SelectionResult> runs;  // ordered by repetition index
  int best_run = 0;
  double runtime_seconds = 0.0;
};

WrapperRuns repeated_wrapper(const Dataset& ds, const FeatureRanking& ranking,
                             const ClassifierConfig& classifier, int folds,
                             int repetitions, std::uint64_t seed,
                             std::optional<double> accuracy_threshold = std::nullopt);

}  // namespace crowdsel
