#include "crowdsel/selection.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>

#include "crowdsel/rng.hpp"

namespace crowdsel {

SelectionResult filter_select(const FeatureRanking& ranking, int k) {
  const int n = static_cast<int>(ranking.order.size());
  if (k < 1 || k > n)
    throw std::invalid_argument("filter_select: k must be in [1, " + std::to_string(n) + "]");

  SelectionResult result;
  result.selected.assign(ranking.order.begin(), ranking.order.begin() + k);
  result.method = "filter";
  result.ranking_method = ranking.method;
  return result;
}

SelectionResult wrapper_select(const Dataset& ds, const FeatureRanking& ranking,
                               const ClassifierConfig& classifier, int folds,
                               std::uint64_t seed,
                               std::optional<double> accuracy_threshold) {
  if (accuracy_threshold && (*accuracy_threshold <= 0.0 || *accuracy_threshold > 100.0))
    throw std::invalid_argument("wrapper_select: accuracy threshold must be in (0, 100]");
  classifier.validate();

  // One fold assignment for the whole run: fitness values at different
  // steps stay comparable.
  const std::vector<int> fold_assignment =
      stratified_folds(ds.labels, folds, derive_seed(seed, 0));
  const std::uint64_t classifier_seed = derive_seed(seed, 1);

  SelectionResult result;
  result.method = "wrapper";
  result.ranking_method = ranking.method;

  double best = 0.0;
  for (int feature : ranking.order) {
    result.selected.push_back(feature);
    const double fitness =
        cv_accuracy(ds, result.selected, classifier, fold_assignment, classifier_seed);
    const bool accepted = fitness > best;
    result.trace.push_back({feature, fitness, accepted});
    if (accepted)
      best = fitness;
    else
      result.selected.pop_back();
    if (accuracy_threshold && best >= *accuracy_threshold) break;
  }
  result.best_accuracy = best;
  return result;
}

WrapperRuns repeated_wrapper(const Dataset& ds, const FeatureRanking& ranking,
                             const ClassifierConfig& classifier, int folds,
                             int repetitions, std::uint64_t seed,
                             std::optional<double> accuracy_threshold) {
  if (repetitions < 1)
    throw std::invalid_argument("repeated_wrapper: repetitions must be positive");

  const auto started = std::chrono::steady_clock::now();
  WrapperRuns out;
  out.runs.resize(static_cast<std::size_t>(repetitions));

  std::exception_ptr error = nullptr;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < repetitions; ++r) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      out.runs[static_cast<std::size_t>(r)] =
          wrapper_select(ds, ranking, classifier, folds,
                         derive_seed(seed, static_cast<std::uint64_t>(r)), accuracy_threshold);
    } catch (...) {
#pragma omp critical
      {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  for (int r = 1; r < repetitions; ++r)
    if (out.runs[static_cast<std::size_t>(r)].best_accuracy >
        out.runs[static_cast<std::size_t>(out.best_run)].best_accuracy)
      out.best_run = r;
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace crowdsel
