#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crowdsel/dataset.hpp"
#include "crowdsel/matrix.hpp"

namespace crowdsel {

struct ClassifierConfig {
  enum class Kind { knn, linear_svm };
  Kind kind = Kind::knn;
  int knn_k = 5;             // must be <= training-set size at use time
  double svm_lambda = 1e-3;  // regularisation
  int svm_epochs = 50;       // passes over the training set

  void validate() const;  // throws std::invalid_argument
};

struct EvalConfig {
  int folds = 5;         // >= 2, <= smallest class count
  int repetitions = 30;  // >= 1
  std::uint64_t seed = 0;

  void validate() const;
};

// Accuracy summary over repeated seeded CV runs, in percent.
struct EvalReport {
  double mean = 0.0;
  double stddev = 0.0;  // sample std (n-1), 0 for a single run
  double worst = 0.0;
  double best = 0.0;
  std::vector<double> per_run;  // ordered by repetition index
  double runtime_seconds = 0.0; // wall clock; never part of canonical JSON
};

// Per-class round-robin dealing of seeded-shuffled members. Returns the
// fold id (0..folds-1) of every sample; per-class fold counts differ by at
// most one. Deterministic in (labels, folds, seed). Throws
// std::invalid_argument when a class is smaller than the fold count.
std::vector<int> stratified_folds(std::span<const int> labels, int folds,
                                  std::uint64_t seed);

// k-NN vote over scaled rows. Distance ties break on the lower training-row
// position, vote ties on the smaller encoded label. Throws when k exceeds
// the training size.
int classify_knn(const Matrix& train_x, std::span<const int> train_y,
                 std::span<const double> query, int k);

// One-vs-rest linear models trained by stochastic subgradient descent on
// the hinge loss (Pegasos-style schedule, unregularised bias). Binary
// problems train a single model and predict by sign.
struct LinearSvmModel {
  Matrix weights;            // one row per model
  std::vector<double> bias;
  int n_classes = 0;

  int predict(std::span<const double> x) const;
};

LinearSvmModel train_linear_svm(const Matrix& train_x, std::span<const int> train_y,
                                int n_classes, const ClassifierConfig& config,
                                std::uint64_t seed);

// Cross-validated accuracy (percent) of a feature subset under a fixed fold
// assignment. Per fold: scaler fitted on training rows restricted to the
// subset, classifier trained on the scaled training rows, test rows scored.
// The seed feeds classifier training only (k-NN ignores it).
double cv_accuracy(const Dataset& ds, std::span<const int> subset,
                   const ClassifierConfig& classifier,
                   std::span<const int> fold_assignment, std::uint64_t seed = 0);

// config.repetitions seeded CV runs; repetition r draws fresh stratified
// folds from derive_seed(config.seed, r). per_run is ordered by repetition
// index, so reports do not depend on worker scheduling.
EvalReport repeated_eval(const Dataset& ds, std::span<const int> subset,
                         const ClassifierConfig& classifier, const EvalConfig& config);

}  // namespace crowdsel
