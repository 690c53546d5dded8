#include <doctest.h>

#include <cmath>

#include "crowdsel/crowding.hpp"
#include "crowdsel/rankers.hpp"
#include "crowdsel/reference.hpp"
#include "crowdsel/rng.hpp"
#include "synthetic.hpp"

using namespace crowdsel;
using testsupport::make_dataset;

TEST_CASE("pearson: feature equal to the labels scores 1") {
  const Dataset ds = make_dataset({{0, 5}, {0, 6}, {1, 7}, {1, 8}}, {0, 0, 1, 1});
  const ScoreVector s = pearson_scores(ds);
  CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pearson: negated labels still score 1 (absolute value)") {
  const Dataset ds = make_dataset({{0, 5}, {0, 6}, {-1, 7}, {-1, 8}}, {0, 0, 1, 1});
  CHECK(pearson_scores(ds).values[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pearson: hand-computed [1,2,3,4] vs labels [0,0,1,1]") {
  const Dataset ds = make_dataset({{1, 0}, {2, 0}, {3, 0}, {4, 0}}, {0, 0, 1, 1});
  const double expected = 2.0 / std::sqrt(5.0);
  CHECK(std::abs(pearson_scores(ds).values[0] - expected) < 1e-12);
}

TEST_CASE("pearson: constant feature scores 0") {
  const Dataset ds = make_dataset({{3, 0}, {3, 1}, {3, 2}}, {0, 0, 1});
  CHECK(pearson_scores(ds).values[0] == 0.0);
}

TEST_CASE("variance: constant feature, [0,2] pair, scaling law") {
  const Dataset constant = make_dataset({{1, 0}, {1, 1}, {1, 2}}, {0, 0, 1});
  CHECK(variance_scores(constant).values[0] == 0.0);

  const Dataset pair = make_dataset({{0, 9}, {2, 1}}, {0, 1});
  CHECK(variance_scores(pair).values[0] == 1.0);

  Dataset scaled = pair;
  scaled.features(0, 0) *= 3.0;
  scaled.features(1, 0) *= 3.0;
  CHECK(variance_scores(scaled).values[0] == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("relieff: hand-enumerated 1-feature example") {
  // Values 0 and 0.1 in class 0, 1 and 1.1 in class 1, k=1. Every hit diff
  // is 0.1/1.1; miss diffs are 1.0/1.1 or 0.9/1.1 -> mean (0.9+0.8+0.8+0.9)/4.4.
  const Dataset ds = make_dataset({{0}, {0.1}, {1}, {1.1}}, {0, 0, 1, 1});
  const ScoreVector s = relieff_scores(ds, 1);
  CHECK(std::abs(s.values[0] - 3.4 / 4.4) < 1e-9);
}

TEST_CASE("relieff: constant feature scores exactly 0") {
  const Dataset ds = make_dataset({{5, 0}, {5, 0.1}, {5, 1}, {5, 1.1}}, {0, 0, 1, 1});
  CHECK(relieff_scores(ds, 1).values[0] == 0.0);
}

TEST_CASE("relieff: class smaller than k+1 is rejected with the class name") {
  const Dataset ds = make_dataset({{0}, {0.1}, {1}, {1.1}}, {0, 0, 0, 1});
  try {
    relieff_scores(ds, 1);
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    CHECK(std::string(e.what()).find("c1") != std::string::npos);
  }
}

TEST_CASE("relieff: matches the naive oracle on random datasets") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(derive_seed(2024, seed));
    const int m = 8 + static_cast<int>(rng.next_below(23));
    const int n = 1 + static_cast<int>(rng.next_below(6));
    const int classes = 2 + static_cast<int>(rng.next_below(2));
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const Dataset ds = testsupport::random_dataset(m, n, classes, derive_seed(2025, seed));
    if (max_relieff_k(ds) < k) continue;
    const ScoreVector fast = relieff_scores(ds, k);
    const std::vector<double> naive = reference::relieff_scores_serial(ds, k);
    for (std::size_t j = 0; j < fast.values.size(); ++j) {
      CHECK(std::abs(fast.values[j] - naive[j]) < 1e-12);
      CHECK(fast.values[j] >= -1.0);
      CHECK(fast.values[j] <= 1.0);
    }
  }
}

TEST_CASE("relieff: duplicated samples with k doubled match the naive oracle") {
  const Dataset base = make_dataset({{0}, {0.1}, {1}, {1.1}}, {0, 0, 1, 1});
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < base.n_samples(); ++i) {
    const std::vector<double> row{base.features(i, 0)};
    rows.push_back(row);
    rows.push_back(row);
    labels.push_back(base.labels[i]);
    labels.push_back(base.labels[i]);
  }
  const Dataset duplicated = make_dataset(rows, labels);
  const ScoreVector fast = relieff_scores(duplicated, 2);
  const std::vector<double> naive = reference::relieff_scores_serial(duplicated, 2);
  CHECK(std::abs(fast.values[0] - naive[0]) < 1e-12);
  // A duplicate sits at distance 0 of its twin, so it becomes the first
  // nearest hit and shrinks the mean hit diff: the duplicated weight is
  // slightly larger than the k=1 weight of the base set, not equal to it.
  CHECK(fast.values[0] == doctest::Approx(0.9 / 1.1).epsilon(1e-9));
  CHECK(fast.values[0] > relieff_scores(base, 1).values[0]);
}

TEST_CASE("relieff: max feasible k is the smallest class size minus one") {
  const Dataset ds = make_dataset({{0}, {0.1}, {0.2}, {1}, {1.1}}, {0, 0, 0, 1, 1});
  CHECK(max_relieff_k(ds) == 1);
}

TEST_CASE("pearson and relieff are invariant under positive affine column transforms") {
  const Dataset ds = testsupport::random_dataset(12, 4, 2, 31);
  const ScoreVector p0 = pearson_scores(ds);
  const ScoreVector r0 = relieff_scores(ds, 2);

  Dataset scaled = ds;
  for (std::size_t i = 0; i < ds.n_samples(); ++i)
    scaled.features(i, 2) = 5.0 * ds.features(i, 2) - 3.0;
  const ScoreVector p1 = pearson_scores(scaled);
  const ScoreVector r1 = relieff_scores(scaled, 2);
  for (std::size_t j = 0; j < ds.n_features(); ++j) {
    CHECK(p1.values[j] == doctest::Approx(p0.values[j]).epsilon(1e-12));
    CHECK(r1.values[j] == doctest::Approx(r0.values[j]).epsilon(1e-12));
  }
}

TEST_CASE("rankers are deterministic") {
  const Dataset ds = testsupport::random_dataset(20, 5, 2, 88);
  CHECK(pearson_scores(ds).values == pearson_scores(ds).values);
  CHECK(variance_scores(ds).values == variance_scores(ds).values);
  CHECK(relieff_scores(ds, 3).values == relieff_scores(ds, 3).values);
}

TEST_CASE("a constant feature never outranks informative features") {
  // Random datasets whose non-constant features carry class signal; column 0
  // is constant. Pearson and variance guarantee this for any non-constant
  // column; ReliefF guarantees it whenever the column's weight is positive,
  // which class-separated columns are.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    testsupport::ReplicaSpec spec{"tiny", 24, 6, 6, 0, 0.5, 0.1, 0.03};
    Dataset ds = testsupport::make_replica(spec, derive_seed(606, seed));
    for (std::size_t i = 0; i < ds.n_samples(); ++i) ds.features(i, 0) = 7.0;

    for (const ScoreVector& s :
         {pearson_scores(ds), variance_scores(ds), relieff_scores(ds, 3)}) {
      const FeatureRanking ranking = rank_descending(s.values, s.method);
      CHECK(ranking.order.back() == 0);
      CHECK(s.values[0] == 0.0);
    }
  }
}
