#include "crowdsel/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "crowdsel/rng.hpp"
#include "crowdsel/stats.hpp"

namespace crowdsel {

void ClassifierConfig::validate() const {
  if (knn_k < 1) throw std::invalid_argument("knn_k must be positive");
  if (kind == Kind::knn && knn_k % 2 == 0)
    throw std::invalid_argument("knn_k must be odd");
  if (svm_lambda <= 0.0) throw std::invalid_argument("svm_lambda must be positive");
  if (svm_epochs < 1) throw std::invalid_argument("svm_epochs must be positive");
}

void EvalConfig::validate() const {
  if (folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be positive");
}

std::vector<int> stratified_folds(std::span<const int> labels, int folds,
                                  std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("stratified_folds: folds must be at least 2");
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(classes));
  for (std::size_t i = 0; i < labels.size(); ++i)
    members[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));

  std::vector<int> assignment(labels.size(), 0);
  Rng rng(seed);
  for (int c = 0; c < classes; ++c) {
    auto& rows = members[static_cast<std::size_t>(c)];
    if (static_cast<int>(rows.size()) < folds)
      throw std::invalid_argument("stratified_folds: class " + std::to_string(c) + " has " +
                                  std::to_string(rows.size()) + " members, fewer than " +
                                  std::to_string(folds) + " folds");
    deterministic_shuffle(rows, rng);
    for (std::size_t pos = 0; pos < rows.size(); ++pos)
      assignment[static_cast<std::size_t>(rows[pos])] = static_cast<int>(pos % folds);
  }
  return assignment;
}

int classify_knn(const Matrix& train_x, std::span<const int> train_y,
                 std::span<const double> query, int k) {
  const int m = static_cast<int>(train_x.rows);
  if (k < 1 || k > m)
    throw std::invalid_argument("classify_knn: k must be in [1, training size]");

  // (squared distance, training-row position); ties resolve on position.
  std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    const std::span<const double> row = train_x.row(static_cast<std::size_t>(t));
    double d2 = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      const double d = row[j] - query[j];
      d2 += d * d;
    }
    dist[static_cast<std::size_t>(t)] = {d2, t};
  }
  std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());

  int max_label = 0;
  for (int y : train_y) max_label = std::max(max_label, y);
  std::vector<int> votes(static_cast<std::size_t>(max_label) + 1, 0);
  for (int t = 0; t < k; ++t)
    votes[static_cast<std::size_t>(train_y[static_cast<std::size_t>(
        dist[static_cast<std::size_t>(t)].second)])]++;

  int winner = 0;
  for (std::size_t c = 1; c < votes.size(); ++c)
    if (votes[c] > votes[static_cast<std::size_t>(winner)]) winner = static_cast<int>(c);
  return winner;  // vote ties keep the smallest encoded label
}

int LinearSvmModel::predict(std::span<const double> x) const {
  auto score = [&](std::size_t model) {
    double s = bias[model];
    const std::span<const double> w = weights.row(model);
    for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * x[j];
    return s;
  };
  if (n_classes == 2) return score(0) > 0.0 ? 1 : 0;
  int best = 0;
  double best_score = score(0);
  for (int c = 1; c < n_classes; ++c) {
    const double s = score(static_cast<std::size_t>(c));
    if (s > best_score) {  // ties keep the smallest label
      best_score = s;
      best = c;
    }
  }
  return best;
}

LinearSvmModel train_linear_svm(const Matrix& train_x, std::span<const int> train_y,
                                int n_classes, const ClassifierConfig& config,
                                std::uint64_t seed) {
  if (n_classes < 2) throw std::invalid_argument("train_linear_svm: need at least 2 classes");
  config.validate();
  const std::size_t m = train_x.rows;
  const std::size_t d = train_x.cols;
  const int models = n_classes == 2 ? 1 : n_classes;

  LinearSvmModel model;
  model.n_classes = n_classes;
  model.weights = Matrix(static_cast<std::size_t>(models), d);
  model.bias.assign(static_cast<std::size_t>(models), 0.0);

  std::vector<int> order(m);
  for (int mi = 0; mi < models; ++mi) {
    // Positive class: encoded label 1 in the binary case, label mi otherwise.
    const int positive = n_classes == 2 ? 1 : mi;
    const std::span<double> w = model.weights.row(static_cast<std::size_t>(mi));
    double& b = model.bias[static_cast<std::size_t>(mi)];
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(mi)));
    std::iota(order.begin(), order.end(), 0);

    const double lambda = config.svm_lambda;
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < config.svm_epochs; ++epoch) {
      deterministic_shuffle(order, rng);
      for (int i : order) {
        ++t;
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        const std::span<const double> x = train_x.row(static_cast<std::size_t>(i));
        const double y = train_y[static_cast<std::size_t>(i)] == positive ? 1.0 : -1.0;
        double margin = b;
        for (std::size_t j = 0; j < d; ++j) margin += w[j] * x[j];
        margin *= y;

        // The bias rides along as a weight on a constant-1 input, so the
        // shrink step keeps early oversized updates from sticking around.
        const double shrink = 1.0 - eta * lambda;  // = 1 - 1/t
        for (std::size_t j = 0; j < d; ++j) w[j] *= shrink;
        b *= shrink;
        if (margin < 1.0) {
          for (std::size_t j = 0; j < d; ++j) w[j] += eta * y * x[j];
          b += eta * y;
        }
      }
    }
  }
  return model;
}

namespace {

struct FoldData {
  Matrix train_x;
  std::vector<int> train_y;
  Matrix test_x;
  std::vector<int> test_rows;
};

FoldData gather_fold(const Dataset& ds, std::span<const int> subset,
                     std::span<const int> fold_assignment, int fold) {
  FoldData fd;
  std::vector<int> train_rows;
  for (std::size_t i = 0; i < fold_assignment.size(); ++i) {
    if (fold_assignment[i] == fold)
      fd.test_rows.push_back(static_cast<int>(i));
    else
      train_rows.push_back(static_cast<int>(i));
  }
  if (train_rows.empty())
    throw std::invalid_argument("cv_accuracy: fold " + std::to_string(fold) +
                                " leaves an empty training set");

  const Scaler scaler = fit_scaler(ds, train_rows, subset);
  auto scaled = [&](std::span<const int> rows) {
    Matrix out(rows.size(), subset.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < subset.size(); ++c)
        out(r, c) = scaler.apply(
            ds.features(static_cast<std::size_t>(rows[r]),
                        static_cast<std::size_t>(subset[c])),
            c);
    return out;
  };
  fd.train_x = scaled(train_rows);
  fd.test_x = scaled(fd.test_rows);
  fd.train_y.reserve(train_rows.size());
  for (int r : train_rows) fd.train_y.push_back(ds.labels[static_cast<std::size_t>(r)]);
  return fd;
}

}  // namespace

double cv_accuracy(const Dataset& ds, std::span<const int> subset,
                   const ClassifierConfig& classifier,
                   std::span<const int> fold_assignment, std::uint64_t seed) {
  if (subset.empty()) throw std::invalid_argument("cv_accuracy: empty feature subset");
  for (int j : subset)
    if (j < 0 || static_cast<std::size_t>(j) >= ds.n_features())
      throw std::invalid_argument("cv_accuracy: feature index out of range");
  if (fold_assignment.size() != ds.n_samples())
    throw std::invalid_argument("cv_accuracy: fold assignment length mismatch");

  int folds = 0;
  for (int f : fold_assignment) {
    if (f < 0) throw std::invalid_argument("cv_accuracy: negative fold id");
    folds = std::max(folds, f + 1);
  }
  if (folds < 2) throw std::invalid_argument("cv_accuracy: need at least 2 folds");

  std::size_t correct = 0;
  for (int fold = 0; fold < folds; ++fold) {
    const FoldData fd = gather_fold(ds, subset, fold_assignment, fold);
    if (fd.test_rows.empty()) continue;

    if (classifier.kind == ClassifierConfig::Kind::knn) {
      for (std::size_t q = 0; q < fd.test_rows.size(); ++q) {
        const int predicted =
            classify_knn(fd.train_x, fd.train_y, fd.test_x.row(q), classifier.knn_k);
        if (predicted == ds.labels[static_cast<std::size_t>(fd.test_rows[q])]) ++correct;
      }
    } else {
      const LinearSvmModel model =
          train_linear_svm(fd.train_x, fd.train_y, static_cast<int>(ds.n_classes()),
                           classifier, derive_seed(seed, static_cast<std::uint64_t>(fold)));
      for (std::size_t q = 0; q < fd.test_rows.size(); ++q) {
        if (model.predict(fd.test_x.row(q)) ==
            ds.labels[static_cast<std::size_t>(fd.test_rows[q])])
          ++correct;
      }
    }
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(ds.n_samples());
}

EvalReport repeated_eval(const Dataset& ds, std::span<const int> subset,
                         const ClassifierConfig& classifier, const EvalConfig& config) {
  classifier.validate();
  config.validate();

  const auto started = std::chrono::steady_clock::now();
  EvalReport report;
  report.per_run.assign(static_cast<std::size_t>(config.repetitions), 0.0);

  std::exception_ptr error = nullptr;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < config.repetitions; ++r) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const std::uint64_t rep_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
      const std::vector<int> folds =
          stratified_folds(ds.labels, config.folds, derive_seed(rep_seed, 0));
      report.per_run[static_cast<std::size_t>(r)] =
          cv_accuracy(ds, subset, classifier, folds, derive_seed(rep_seed, 1));
    } catch (...) {
#pragma omp critical
      {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);

  const SummaryStats s = summary_stats(report.per_run);
  report.mean = s.mean;
  report.stddev = s.stddev;
  report.worst = s.worst;
  report.best = s.best;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace crowdsel
