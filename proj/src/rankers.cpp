#include "crowdsel/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crowdsel {

ScoreVector pearson_scores(const Dataset& ds) {
  const int n = static_cast<int>(ds.n_features());
  const std::size_t m = ds.n_samples();

  double label_mean = 0.0;
  for (int y : ds.labels) label_mean += y;
  label_mean /= static_cast<double>(m);
  double label_ss = 0.0;
  for (int y : ds.labels) {
    const double d = y - label_mean;
    label_ss += d * d;
  }

  ScoreVector out;
  out.method = "pearson";
  out.values.assign(static_cast<std::size_t>(n), 0.0);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += ds.features(i, static_cast<std::size_t>(j));
    mean /= static_cast<double>(m);

    double ss = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double dx = ds.features(i, static_cast<std::size_t>(j)) - mean;
      ss += dx * dx;
      cross += dx * (ds.labels[i] - label_mean);
    }
    if (ss == 0.0 || label_ss == 0.0) continue;  // constant feature scores 0
    out.values[static_cast<std::size_t>(j)] =
        std::min(1.0, std::abs(cross) / std::sqrt(ss * label_ss));
  }
  return out;
}

ScoreVector variance_scores(const Dataset& ds) {
  const int n = static_cast<int>(ds.n_features());
  const std::size_t m = ds.n_samples();

  ScoreVector out;
  out.method = "variance";
  out.values.assign(static_cast<std::size_t>(n), 0.0);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += ds.features(i, static_cast<std::size_t>(j));
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = ds.features(i, static_cast<std::size_t>(j)) - mean;
      ss += d * d;
    }
    out.values[static_cast<std::size_t>(j)] = ss / static_cast<double>(m);
  }
  return out;
}

int max_relieff_k(const Dataset& ds) {
  const auto counts = ds.class_counts();
  std::size_t smallest = counts.front();
  for (std::size_t c : counts) smallest = std::min(smallest, c);
  return static_cast<int>(smallest) - 1;
}

ScoreVector relieff_scores(const Dataset& ds, int k_neighbors) {
  const int n = static_cast<int>(ds.n_features());
  const int m = static_cast<int>(ds.n_samples());
  const int classes = static_cast<int>(ds.n_classes());
  if (k_neighbors < 1) throw std::invalid_argument("relieff_scores: k_neighbors must be >= 1");

  const auto counts = ds.class_counts();
  for (int c = 0; c < classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] < static_cast<std::size_t>(k_neighbors) + 1)
      throw DatasetError("relieff: class '" + ds.label_names[static_cast<std::size_t>(c)] +
                         "' has " + std::to_string(counts[static_cast<std::size_t>(c)]) +
                         " members, fewer than k_neighbors + 1 = " +
                         std::to_string(k_neighbors + 1));
  }

  // Full-dataset ranges; diff of a constant feature is 0 everywhere.
  std::vector<double> inv_range(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double lo = ds.features(0, static_cast<std::size_t>(j));
    double hi = lo;
    for (int i = 1; i < m; ++i) {
      const double v = ds.features(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi > lo) inv_range[static_cast<std::size_t>(j)] = 1.0 / (hi - lo);
  }

  std::vector<double> priors(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c)
    priors[static_cast<std::size_t>(c)] =
        static_cast<double>(counts[static_cast<std::size_t>(c)]) / static_cast<double>(m);

  constexpr int kBlock = 64;
  std::vector<double> contrib(static_cast<std::size_t>(kBlock) * n);
  std::vector<double> weights(static_cast<std::size_t>(n), 0.0);

  for (int base = 0; base < m; base += kBlock) {
    const int count = std::min(kBlock, m - base);

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < count; ++s) {
      const int i = base + s;
      const int own = ds.labels[static_cast<std::size_t>(i)];
      double* acc = contrib.data() + static_cast<std::size_t>(s) * n;
      std::fill(acc, acc + n, 0.0);

      // Manhattan distance over range-normalised features, per class.
      std::vector<std::vector<std::pair<double, int>>> per_class(
          static_cast<std::size_t>(classes));
      for (int q = 0; q < m; ++q) {
        if (q == i) continue;
        double dist = 0.0;
        for (int j = 0; j < n; ++j)
          dist += std::abs(ds.features(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) -
                           ds.features(static_cast<std::size_t>(q), static_cast<std::size_t>(j))) *
                  inv_range[static_cast<std::size_t>(j)];
        per_class[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(q)])].emplace_back(
            dist, q);
      }

      for (int c = 0; c < classes; ++c) {
        auto& cand = per_class[static_cast<std::size_t>(c)];
        std::sort(cand.begin(), cand.end());  // ties break on instance index
        const double factor =
            (c == own) ? -1.0
                       : priors[static_cast<std::size_t>(c)] /
                             (1.0 - priors[static_cast<std::size_t>(own)]);
        const double scale = factor / static_cast<double>(k_neighbors);
        for (int t = 0; t < k_neighbors; ++t) {
          const int q = cand[static_cast<std::size_t>(t)].second;
          for (int j = 0; j < n; ++j)
            acc[j] += scale *
                      std::abs(ds.features(static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(j)) -
                               ds.features(static_cast<std::size_t>(q),
                                           static_cast<std::size_t>(j))) *
                      inv_range[static_cast<std::size_t>(j)];
        }
      }
    }

    for (int s = 0; s < count; ++s) {
      const double* acc = contrib.data() + static_cast<std::size_t>(s) * n;
      for (int j = 0; j < n; ++j) weights[static_cast<std::size_t>(j)] += acc[j];
    }
  }

  ScoreVector out;
  out.method = "relieff";
  out.values.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    out.values[static_cast<std::size_t>(j)] =
        weights[static_cast<std::size_t>(j)] / static_cast<double>(m);
  return out;
}

}  // namespace crowdsel
