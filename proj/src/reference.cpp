#include "crowdsel/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crowdsel::reference {

std::vector<CrowdingScore> crowding_scores_serial(const Dataset& ds) {
  const std::size_t n = ds.n_features();
  const std::size_t m = ds.n_samples();
  if (n < 2)
    throw std::invalid_argument("crowding_scores_serial: need at least 2 features");

  std::vector<CrowdingScore> scores(n);
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (ds.features(s, a) != ds.features(s, b)) return ds.features(s, a) < ds.features(s, b);
      return a < b;
    });

    const double lo = ds.features(s, idx.front());
    const double hi = ds.features(s, idx.back());
    if (lo == hi) continue;

    scores[idx.front()].boundary_count++;
    scores[idx.back()].boundary_count++;
    for (std::size_t i = 1; i + 1 < n; ++i)
      scores[idx[i]].finite_sum +=
          (ds.features(s, idx[i + 1]) - ds.features(s, idx[i - 1])) / (hi - lo);
  }
  return scores;
}

std::vector<double> relieff_scores_serial(const Dataset& ds, int k_neighbors) {
  const std::size_t n = ds.n_features();
  const std::size_t m = ds.n_samples();
  const std::size_t classes = ds.n_classes();

  std::vector<double> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = hi[j] = ds.features(0, j);
    for (std::size_t i = 1; i < m; ++i) {
      lo[j] = std::min(lo[j], ds.features(i, j));
      hi[j] = std::max(hi[j], ds.features(i, j));
    }
  }
  auto diff = [&](std::size_t j, std::size_t a, std::size_t b) {
    if (hi[j] == lo[j]) return 0.0;
    return std::abs(ds.features(a, j) - ds.features(b, j)) / (hi[j] - lo[j]);
  };
  auto distance = [&](std::size_t a, std::size_t b) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += diff(j, a, b);
    return d;
  };

  const auto counts = ds.class_counts();
  for (std::size_t c = 0; c < classes; ++c)
    if (counts[c] < static_cast<std::size_t>(k_neighbors) + 1)
      throw DatasetError("relieff_scores_serial: class '" + ds.label_names[c] + "' too small");

  std::vector<double> weights(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t own = static_cast<std::size_t>(ds.labels[i]);
    for (std::size_t c = 0; c < classes; ++c) {
      // All candidates of class c sorted by (distance, index); recomputes
      // every distance on purpose.
      std::vector<std::pair<double, std::size_t>> cand;
      for (std::size_t q = 0; q < m; ++q)
        if (q != i && static_cast<std::size_t>(ds.labels[q]) == c)
          cand.emplace_back(distance(i, q), q);
      std::sort(cand.begin(), cand.end());

      double factor;
      if (c == own) {
        factor = -1.0;
      } else {
        const double prior_c = static_cast<double>(counts[c]) / static_cast<double>(m);
        const double prior_own = static_cast<double>(counts[own]) / static_cast<double>(m);
        factor = prior_c / (1.0 - prior_own);
      }
      for (int t = 0; t < k_neighbors; ++t)
        for (std::size_t j = 0; j < n; ++j)
          weights[j] += factor * diff(j, i, cand[static_cast<std::size_t>(t)].second) /
                        static_cast<double>(k_neighbors);
    }
  }
  for (std::size_t j = 0; j < n; ++j) weights[j] /= static_cast<double>(m);
  return weights;
}

namespace {

// Recursively choose which ranks belong to the first sample.
void enumerate_splits(int next_rank, int n_total, int remaining, double sum,
                      std::vector<double>& sums) {
  if (remaining == 0) {
    sums.push_back(sum);
    return;
  }
  if (n_total - next_rank + 1 < remaining) return;
  enumerate_splits(next_rank + 1, n_total, remaining - 1, sum + next_rank, sums);
  enumerate_splits(next_rank + 1, n_total, remaining, sum, sums);
}

}  // namespace

double wilcoxon_exact_p_enumerated(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("wilcoxon_exact_p_enumerated: pooled values must be untied");

  const int n_a = static_cast<int>(a.size());
  const int n_b = static_cast<int>(b.size());
  const int n = n_a + n_b;

  double rank_sum_a = 0.0;
  for (double v : a)
    rank_sum_a += static_cast<double>(
        std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin() + 1);

  const double u_a = rank_sum_a - n_a * (n_a + 1.0) / 2.0;
  const double u_b = static_cast<double>(n_a) * n_b - u_a;

  // Observed tail based on the smaller of U_a / U_b, doubled.
  const bool lower_tail_a = u_a <= u_b;
  const int size = lower_tail_a ? n_a : n_b;
  const double threshold =
      (lower_tail_a ? u_a : u_b) + size * (size + 1.0) / 2.0;

  std::vector<double> sums;
  enumerate_splits(1, n, size, 0.0, sums);
  double at_or_below = 0.0;
  for (double s : sums)
    if (s <= threshold + 1e-9) at_or_below += 1.0;
  return std::min(1.0, 2.0 * at_or_below / static_cast<double>(sums.size()));
}

}  // namespace crowdsel::reference
