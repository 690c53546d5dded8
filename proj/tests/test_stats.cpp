#include <doctest.h>

#include <cmath>

#include "crowdsel/reference.hpp"
#include "crowdsel/rng.hpp"
#include "crowdsel/stats.hpp"

using namespace crowdsel;

TEST_CASE("summary_stats: singleton") {
  const std::vector<double> v{5.0};
  const SummaryStats s = summary_stats(v);
  CHECK(s.mean == 5.0);
  CHECK(s.stddev == 0.0);
  CHECK(s.worst == 5.0);
  CHECK(s.best == 5.0);
}

TEST_CASE("summary_stats: [90, 94]") {
  const std::vector<double> v{90.0, 94.0};
  const SummaryStats s = summary_stats(v);
  CHECK(s.mean == 92.0);
  CHECK(s.stddev == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s.worst == 90.0);
  CHECK(s.best == 94.0);
}

TEST_CASE("summary_stats: constant list has no spread") {
  const std::vector<double> v{3.0, 3.0, 3.0, 3.0};
  const SummaryStats s = summary_stats(v);
  CHECK(s.stddev == 0.0);
  CHECK(s.worst == s.best);
}

TEST_CASE("summary_stats: empty input is an error") {
  CHECK_THROWS_AS(summary_stats(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("wilcoxon: fully separated triples give exact p = 0.1") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5, 6};
  const TestOutcome t = wilcoxon_rank_sum(a, b);
  CHECK(t.u_statistic == 0.0);
  CHECK(t.method == "exact");
  CHECK(t.p_value == 0.1);
  CHECK(!t.significant_at_005);
}

TEST_CASE("wilcoxon: identical samples are never significant") {
  const std::vector<double> a{1, 2, 3, 4};
  const TestOutcome t = wilcoxon_rank_sum(a, a);
  CHECK(t.p_value == 1.0);
  CHECK(t.method == "normal-approximation");  // ties force the approximation
  CHECK(!t.significant_at_005);
}

TEST_CASE("wilcoxon: tied pairs use midranks") {
  const std::vector<double> a{1, 2};
  const std::vector<double> b{1, 2};
  const TestOutcome t = wilcoxon_rank_sum(a, b);
  CHECK(t.u_statistic == 2.0);  // ranks (1.5, 3.5) -> R_a = 5, U_a = 2 = U_b
  CHECK(t.method == "normal-approximation");
  CHECK(t.p_value == 1.0);
}

TEST_CASE("wilcoxon: exact path used iff both sizes <= 12 and no ties") {
  std::vector<double> big_a, big_b;
  for (int i = 0; i < 13; ++i) big_a.push_back(i);
  for (int i = 0; i < 5; ++i) big_b.push_back(100 + i);
  CHECK(wilcoxon_rank_sum(big_a, big_b).method == "normal-approximation");
  CHECK(wilcoxon_rank_sum(big_b, big_b).method == "normal-approximation");  // ties

  const std::vector<double> a{1.5, 3.5, 9.0};
  const std::vector<double> b{2.0, 4.0};
  CHECK(wilcoxon_rank_sum(a, b).method == "exact");
}

TEST_CASE("wilcoxon: symmetry and U_a + U_b = n_a * n_b on random inputs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(derive_seed(11, seed));
    const std::size_t n_a = 1 + rng.next_below(15);
    const std::size_t n_b = 1 + rng.next_below(15);
    std::vector<double> a, b;
    for (std::size_t i = 0; i < n_a; ++i)
      a.push_back(std::floor(rng.next_double() * 20.0));  // integers force ties
    for (std::size_t i = 0; i < n_b; ++i) b.push_back(std::floor(rng.next_double() * 20.0));

    const TestOutcome ab = wilcoxon_rank_sum(a, b);
    const TestOutcome ba = wilcoxon_rank_sum(b, a);
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
    CHECK(ab.u_statistic + ba.u_statistic ==
          doctest::Approx(static_cast<double>(n_a * n_b)).epsilon(1e-12));
    CHECK(ab.p_value >= 0.0);
    CHECK(ab.p_value <= 1.0);
  }
}

TEST_CASE("wilcoxon: exact path matches the enumeration oracle for sizes <= 7") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(derive_seed(13, seed));
    const std::size_t n_a = 1 + rng.next_below(7);
    const std::size_t n_b = 1 + rng.next_below(7);
    std::vector<double> a, b;
    // Untied by construction: distinct multiples plus a tiny offset.
    std::vector<double> pool;
    for (std::size_t i = 0; i < n_a + n_b; ++i) pool.push_back(static_cast<double>(i) * 1.25);
    deterministic_shuffle(pool, rng);
    a.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_a));
    b.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_a), pool.end());

    const TestOutcome t = wilcoxon_rank_sum(a, b);
    REQUIRE(t.method == "exact");
    const double oracle = reference::wilcoxon_exact_p_enumerated(a, b);
    CHECK(std::abs(t.p_value - oracle) < 1e-12);
  }
}

TEST_CASE("wilcoxon: empty sample is an error") {
  const std::vector<double> a{1.0};
  CHECK_THROWS_AS(wilcoxon_rank_sum(a, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{}, a), std::invalid_argument);
}
