#include "crowdsel/crowding.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace crowdsel {

namespace {

// Samples per parallel block. Contributions are buffered per sample and
// reduced in sample order afterwards, so the result does not depend on the
// number of threads.
constexpr int kBlock = 256;

}  // namespace

std::vector<CrowdingScore> crowding_scores(const Dataset& ds) {
  const int n = static_cast<int>(ds.n_features());
  const int m = static_cast<int>(ds.n_samples());
  if (n < 2)
    throw std::invalid_argument("crowding_scores: need at least 2 features");

  std::vector<CrowdingScore> scores(static_cast<std::size_t>(n));
  std::vector<double> gaps(static_cast<std::size_t>(kBlock) * n);
  std::vector<std::array<int, 2>> extremes(kBlock);  // {min,max} feature or {-1,-1}

  for (int base = 0; base < m; base += kBlock) {
    const int count = std::min(kBlock, m - base);

#pragma omp parallel for schedule(static)
    for (int s = 0; s < count; ++s) {
      const std::span<const double> row = ds.features.row(static_cast<std::size_t>(base + s));
      double* gap = gaps.data() + static_cast<std::size_t>(s) * n;
      std::fill(gap, gap + n, 0.0);

      std::vector<int> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&row](int a, int b) {
        if (row[static_cast<std::size_t>(a)] != row[static_cast<std::size_t>(b)])
          return row[static_cast<std::size_t>(a)] < row[static_cast<std::size_t>(b)];
        return a < b;
      });

      const double lo = row[static_cast<std::size_t>(idx.front())];
      const double hi = row[static_cast<std::size_t>(idx.back())];
      if (lo == hi) {  // constant row: no ordering information
        extremes[static_cast<std::size_t>(s)] = {-1, -1};
        continue;
      }
      extremes[static_cast<std::size_t>(s)] = {idx.front(), idx.back()};

      const double range = hi - lo;
      for (int i = 1; i + 1 < n; ++i) {
        const double left = row[static_cast<std::size_t>(idx[static_cast<std::size_t>(i - 1)])];
        const double right = row[static_cast<std::size_t>(idx[static_cast<std::size_t>(i + 1)])];
        gap[idx[static_cast<std::size_t>(i)]] = (right - left) / range;
      }
    }

    // Fixed-order reduction: identical to a serial sample loop. Adding the
    // untouched 0.0 slots does not change any bit of a non-negative sum.
    for (int s = 0; s < count; ++s) {
      const auto& ex = extremes[static_cast<std::size_t>(s)];
      if (ex[0] < 0) continue;
      scores[static_cast<std::size_t>(ex[0])].boundary_count++;
      scores[static_cast<std::size_t>(ex[1])].boundary_count++;
      const double* gap = gaps.data() + static_cast<std::size_t>(s) * n;
      for (int f = 0; f < n; ++f) scores[static_cast<std::size_t>(f)].finite_sum += gap[f];
    }
  }
  return scores;
}

namespace {

template <typename Score, typename Greater>
std::vector<int> descending_order(const std::vector<Score>& scores, Greater greater) {
  if (scores.empty()) throw std::invalid_argument("rank_descending: empty scores");
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (greater(scores[static_cast<std::size_t>(a)], scores[static_cast<std::size_t>(b)]))
      return true;
    if (greater(scores[static_cast<std::size_t>(b)], scores[static_cast<std::size_t>(a)]))
      return false;
    return a < b;  // ties keep ascending feature index
  });
  return order;
}

}  // namespace

FeatureRanking rank_descending(const std::vector<CrowdingScore>& scores) {
  FeatureRanking ranking;
  ranking.order = descending_order(scores, [](const CrowdingScore& a, const CrowdingScore& b) {
    return a > b;
  });
  ranking.crowding = scores;
  ranking.method = "crowding";
  return ranking;
}

FeatureRanking rank_descending(const std::vector<double>& scores, std::string method) {
  FeatureRanking ranking;
  ranking.order = descending_order(scores, [](double a, double b) { return a > b; });
  ranking.values = scores;
  ranking.method = std::move(method);
  return ranking;
}

}  // namespace crowdsel
