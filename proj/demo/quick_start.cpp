// Registers two datasets with an engine and runs a few queries, showing the
// selected kernel, the probe trace and the cache on a repeated query.

#include <numeric>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "adaptive_search/adaptive_search.hpp"

int main() {
  using namespace adsearch;

  Engine engine;

  const auto odds = engine.register_dataset(SortedDataset({1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21}));
  std::vector<Key> dense(10'000);
  std::iota(dense.begin(), dense.end(), Key{0});
  const auto range = engine.register_dataset(SortedDataset(std::move(dense)));

  auto show = [&](const RegisteredDataset& reg, Key target) {
    const QueryResult r = engine.adaptive_search(reg, target);
    fmt::print("n={:<6} target={:<5} -> {:<9} via {:<13} probes={} visited=[{}]\n", reg.dataset.size(), target,
               r.outcome.index ? fmt::format("index {}", *r.outcome.index) : "not found",
               to_string(r.algorithm_used), r.outcome.trace.probes, fmt::join(r.outcome.trace.visited, ","));
  };

  show(odds, 13);
  show(odds, 13);
  show(odds, 14);
  show(range, 4242);

  for (const auto& row : engine.report().datasets) {
    fmt::print("dataset {} n={} score={:.3f} choice={} ({})\n", row.id.to_string(), row.n,
               row.stats.uniformity_score, to_string(row.choice.algorithm), to_string(row.choice.reason));
  }
  const CacheStats c = engine.cache_stats();
  fmt::print("cache: hits={} misses={} evictions={} size={}/{}\n", c.hits, c.misses, c.evictions, c.size,
             c.capacity);
}
