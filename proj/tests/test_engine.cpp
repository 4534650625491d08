#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "adaptive_search/engine.hpp"
#include "support.hpp"

namespace adsearch {
namespace {

using testing::contains;

SortedDataset iota_ds(std::size_t n) {
  std::vector<Key> v(n);
  std::iota(v.begin(), v.end(), Key{0});
  return SortedDataset(std::move(v));
}

SortedDataset powers_of_two() {
  std::vector<Key> v;
  for (int i = 0; i <= 20; ++i) v.push_back(Key{1} << i);
  return SortedDataset(std::move(v));
}

TEST(Register, ChoosesPerDistribution) {
  Engine engine;
  EXPECT_EQ(engine.register_dataset(iota_ds(10'001)).choice.algorithm, Algorithm::Interpolation);
  EXPECT_EQ(engine.register_dataset(powers_of_two()).choice,
            (AlgorithmChoice{Algorithm::Binary, ChoiceReason::TooIrregular}));
  EXPECT_EQ(engine.register_dataset(iota_ds(8)).choice, (AlgorithmChoice{Algorithm::Binary, ChoiceReason::TooSmall}));
}

TEST(Register, SameContentIsMemoized) {
  Engine engine;
  const auto a = engine.register_dataset(SortedDataset({1, 2, 3}));
  const auto b = engine.register_dataset(SortedDataset({1, 2, 3}));
  EXPECT_EQ(a.choice, b.choice);
  EXPECT_EQ(a.stats, b.stats);
  EXPECT_EQ(engine.report().datasets.size(), 1u);
}

TEST(AdaptiveSearch, WorkedExampleThenCacheHit) {
  Engine engine;
  const auto reg = engine.register_dataset(SortedDataset({1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21}));
  const auto first = engine.adaptive_search(reg, 13);
  EXPECT_EQ(first.outcome.index, 6u);
  EXPECT_FALSE(first.cache_hit);
  EXPECT_EQ(first.algorithm_used, Route::Binary);  // n = 11 < min_interp_len
  EXPECT_EQ(first.kernel_probes, first.outcome.trace.probes);

  const auto second = engine.adaptive_search(reg, 13);
  EXPECT_TRUE(second.cache_hit);
  EXPECT_EQ(second.algorithm_used, Route::Cache);
  EXPECT_EQ(second.outcome.index, 6u);
  EXPECT_EQ(second.kernel_probes, 0u);
  EXPECT_EQ(second.outcome.trace, first.outcome.trace);  // stored verbatim
}

TEST(AdaptiveSearch, UniformRangeUsesInterpolation) {
  Engine engine;
  const auto reg = engine.register_dataset(iota_ds(10'000));
  const auto r = engine.adaptive_search(reg, 4242);
  ASSERT_TRUE(r.outcome.found());
  EXPECT_EQ(reg.dataset[*r.outcome.index], 4242);
  EXPECT_EQ(r.algorithm_used, Route::Interpolation);
}

TEST(AdaptiveSearch, NegativeResultsAreCached) {
  Engine engine;
  const auto reg = engine.register_dataset(SortedDataset({2, 4, 6}));
  EXPECT_FALSE(engine.adaptive_search(reg, 5).outcome.found());
  const auto again = engine.adaptive_search(reg, 5);
  EXPECT_TRUE(again.cache_hit);
  EXPECT_FALSE(again.outcome.found());
}

TEST(AdaptiveSearch, DistinctDatasetsDoNotShareEntries) {
  Engine engine;
  const auto a = engine.register_dataset(SortedDataset({1, 2, 3}));
  const auto b = engine.register_dataset(SortedDataset({3, 4, 5}));
  engine.adaptive_search(a, 3);
  const auto r = engine.adaptive_search(b, 3);
  EXPECT_FALSE(r.cache_hit);
  EXPECT_EQ(r.outcome.index, 0u);
}

TEST(AdaptiveSearch, OverrideForcesKernel) {
  EngineConfig cfg;
  cfg.override_algorithm = Algorithm::Linear;
  Engine engine(cfg);
  const auto reg = engine.register_dataset(iota_ds(1000));
  const auto r = engine.adaptive_search(reg, 500);
  EXPECT_EQ(r.algorithm_used, Route::Linear);
  EXPECT_EQ(r.outcome.trace.probes, 501u);
}

TEST(EngineConfig, RejectsZeroCapacity) {
  EngineConfig cfg;
  cfg.cache_capacity = 0;
  EXPECT_THROW(Engine{cfg}, std::invalid_argument);
}

TEST(EngineReport, FreshAndAfterTraffic) {
  Engine engine;
  const auto fresh = engine.report();
  EXPECT_TRUE(fresh.datasets.empty());
  EXPECT_EQ(fresh.cache, (CacheStats{0, 0, 0, 0, 1024}));

  const auto reg = engine.register_dataset(iota_ds(100));
  for (int i = 0; i < 100; ++i) engine.adaptive_search(reg, 50);
  EXPECT_EQ(engine.report().cache.hits, 99u);
  EXPECT_EQ(engine.report().cache.misses, 1u);

  engine.register_dataset(powers_of_two());
  const auto rows = engine.report().datasets;
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].n, 100u);
  EXPECT_EQ(rows[1].choice.algorithm, Algorithm::Binary);
}

TEST(EngineProperty, AgreesWithLinearOracleExhaustively) {
  testing::for_each_nondecreasing(6, 7, [](const std::vector<Key>& v) {
    EngineConfig cfg;
    cfg.selector.min_interp_len = 2;  // let small inputs reach interpolation too
    Engine engine(cfg);
    const auto reg = engine.register_dataset(SortedDataset(v));
    for (int pass = 0; pass < 2; ++pass) {
      for (Key t = -1; t <= 8; ++t) {
        const auto r = engine.adaptive_search(reg, t);
        ASSERT_EQ(r.outcome.found(), contains(v, t));
        if (r.outcome.found()) {
          ASSERT_EQ(v[*r.outcome.index], t);
        }
        ASSERT_EQ(r.cache_hit, pass == 1);
      }
    }
  });
}

TEST(EngineProperty, AgreesWithLinearOracleAtScale) {
  std::mt19937_64 rng(41);
  for (bool skewed : {false, true}) {
    std::vector<Key> v(100'000);
    for (auto& x : v) {
      const auto r = static_cast<Key>(rng() % 1'000'000'000);
      x = skewed ? static_cast<Key>(std::exp(static_cast<double>(r) * 3e-8)) : r;
    }
    std::sort(v.begin(), v.end());
    Engine engine;
    const auto reg = engine.register_dataset(SortedDataset(v));
    EXPECT_EQ(reg.choice.algorithm, skewed ? Algorithm::Binary : Algorithm::Interpolation);
    for (int i = 0; i < 300; ++i) {
      const Key t = (i % 2) ? v[rng() % v.size()] : static_cast<Key>(rng() % 1'000'000'000);
      const auto r = engine.adaptive_search(reg, t);
      ASSERT_EQ(r.outcome.found(), linear_search(reg.dataset, t).found());
      if (r.outcome.found()) {
        ASSERT_EQ(v[*r.outcome.index], t);
      }
      if (!r.cache_hit) {
        ASSERT_EQ(r.algorithm_used, route_of(reg.choice.algorithm));
      }
    }
  }
}

TEST(EngineProperty, CachingNeverChangesAnswersAndSavesProbes) {
  std::mt19937_64 rng(42);
  std::vector<Key> v(5000);
  for (auto& x : v) x = static_cast<Key>(rng() % 20'000);
  std::sort(v.begin(), v.end());
  const SortedDataset ds(v);

  std::vector<Key> queries;
  for (int i = 0; i < 4000; ++i) {
    if (!queries.empty() && rng() % 2 == 0) {
      queries.push_back(queries[rng() % queries.size()]);
    } else {
      queries.push_back(static_cast<Key>(rng() % 20'000));
    }
  }

  EngineConfig small;
  small.cache_capacity = 1;
  EngineConfig large;
  large.cache_capacity = 8192;
  Engine a(small), b(large);
  const auto ra = a.register_dataset(ds);
  const auto rb = b.register_dataset(ds);
  std::size_t probes_small = 0, probes_large = 0, probes_uncached = 0;
  for (Key t : queries) {
    const auto x = a.adaptive_search(ra, t);
    const auto y = b.adaptive_search(rb, t);
    ASSERT_EQ(x.outcome.found(), y.outcome.found());
    if (y.outcome.found()) {
      ASSERT_EQ(v[*y.outcome.index], t);
    }
    probes_small += x.kernel_probes;
    probes_large += y.kernel_probes;
    probes_uncached += run_kernel(rb.choice.algorithm, ds.values(), t).trace.probes;
  }
  EXPECT_LE(probes_large, probes_small);
  EXPECT_LE(probes_small, probes_uncached);
  EXPECT_LT(probes_large, probes_uncached);
}

}  // namespace
}  // namespace adsearch
