#include "crowdsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace crowdsel {

SummaryStats summary_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summary_stats: empty input");

  SummaryStats s;
  s.worst = values[0];
  s.best = values[0];
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.worst = std::min(s.worst, v);
    s.best = std::max(s.best, v);
  }
  const double n = static_cast<double>(values.size());
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

namespace {

struct RankedPool {
  double rank_sum_a = 0.0;  // midrank sum of sample a
  bool has_ties = false;
  double tie_term = 0.0;  // sum of (t^3 - t) over tie groups
};

RankedPool midranks(std::span<const double> a, std::span<const double> b) {
  struct Entry {
    double value;
    bool from_a;
  };
  std::vector<Entry> pool;
  pool.reserve(a.size() + b.size());
  for (double v : a) pool.push_back({v, true});
  for (double v : b) pool.push_back({v, false});
  std::sort(pool.begin(), pool.end(),
            [](const Entry& x, const Entry& y) { return x.value < y.value; });

  RankedPool out;
  std::size_t i = 0;
  while (i < pool.size()) {
    std::size_t j = i;
    while (j < pool.size() && pool[j].value == pool[i].value) ++j;
    const double t = static_cast<double>(j - i);
    // Positions i..j-1 share the average 1-based rank.
    const double rank = static_cast<double>(i + j + 1) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (pool[k].from_a) out.rank_sum_a += rank;
    if (t > 1.0) {
      out.has_ties = true;
      out.tie_term += t * t * t - t;
    }
    i = j;
  }
  return out;
}

// P(rank sum of the first sample <= target) under uniform choice of which
// n_a of the ranks 1..N belong to it. Plain subset-sum count.
double exact_cdf_rank_sum(int n_a, int n_total, double target) {
  const int max_sum = n_total * (n_total + 1) / 2;
  // count[k][s]: subsets of size k of the ranks processed so far with sum s.
  std::vector<std::vector<double>> count(
      static_cast<std::size_t>(n_a) + 1,
      std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  count[0][0] = 1.0;
  for (int rank = 1; rank <= n_total; ++rank) {
    for (int k = std::min(n_a, rank); k >= 1; --k) {
      auto& row = count[static_cast<std::size_t>(k)];
      const auto& prev = count[static_cast<std::size_t>(k - 1)];
      for (int s = max_sum; s >= rank; --s)
        row[static_cast<std::size_t>(s)] += prev[static_cast<std::size_t>(s - rank)];
    }
  }
  double total = 0.0, below = 0.0;
  const auto& dist = count[static_cast<std::size_t>(n_a)];
  for (int s = 0; s <= max_sum; ++s) {
    total += dist[static_cast<std::size_t>(s)];
    if (static_cast<double>(s) <= target + 1e-9) below += dist[static_cast<std::size_t>(s)];
  }
  return below / total;
}

}  // namespace

TestOutcome wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("wilcoxon_rank_sum: both samples must be nonempty");

  const double n_a = static_cast<double>(a.size());
  const double n_b = static_cast<double>(b.size());
  const RankedPool pool = midranks(a, b);
  const double u_a = pool.rank_sum_a - n_a * (n_a + 1.0) / 2.0;
  const double u_b = n_a * n_b - u_a;

  TestOutcome out;
  out.u_statistic = u_a;

  if (a.size() <= 12 && b.size() <= 12 && !pool.has_ties) {
    out.method = "exact";
    // Two-sided: double the probability of the smaller tail. U <= u is
    // equivalent to rank_sum <= u + n_a(n_a+1)/2.
    const double u_min = std::min(u_a, u_b);
    double p;
    if (u_min == u_a) {
      p = 2.0 * exact_cdf_rank_sum(static_cast<int>(a.size()),
                                   static_cast<int>(a.size() + b.size()),
                                   u_a + n_a * (n_a + 1.0) / 2.0);
    } else {
      p = 2.0 * exact_cdf_rank_sum(static_cast<int>(b.size()),
                                   static_cast<int>(a.size() + b.size()),
                                   u_b + n_b * (n_b + 1.0) / 2.0);
    }
    out.p_value = std::min(1.0, p);
  } else {
    out.method = "normal-approximation";
    const double n = n_a + n_b;
    const double mu = n_a * n_b / 2.0;
    const double variance =
        n_a * n_b / 12.0 * ((n + 1.0) - pool.tie_term / (n * (n - 1.0)));
    if (variance <= 0.0) {
      out.p_value = 1.0;  // every pooled value tied
    } else {
      const double z = std::max(0.0, std::abs(u_a - mu) - 0.5) / std::sqrt(variance);
      out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    }
  }
  out.significant_at_005 = out.p_value < 0.05;
  return out;
}

}  // namespace crowdsel
