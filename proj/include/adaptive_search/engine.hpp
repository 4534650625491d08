#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adaptive_search/core_search.hpp"
#include "adaptive_search/dataset.hpp"
#include "adaptive_search/lru_cache.hpp"
#include "adaptive_search/selector.hpp"

namespace adsearch {

struct EngineConfig {
  SelectorConfig selector;
  std::size_t cache_capacity = 1024;
  // Forces one kernel for every miss; used to measure pure baselines.
  std::optional<Algorithm> override_algorithm;

  void validate() const {
    selector.validate();
    if (cache_capacity < 1) throw std::invalid_argument("engine: cache_capacity must be >= 1");
  }
};

struct RegisteredDataset {
  SortedDataset dataset;
  DistributionStats stats;
  AlgorithmChoice choice;
};

// Which path produced a query's answer.
enum class Route : std::uint8_t { Binary, Interpolation, Linear, Cache };

constexpr Route route_of(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Binary: return Route::Binary;
    case Algorithm::Interpolation: return Route::Interpolation;
    case Algorithm::Linear: return Route::Linear;
  }
  return Route::Binary;
}

constexpr std::string_view to_string(Route r) noexcept {
  return r == Route::Cache ? std::string_view{"cache"} : to_string(static_cast<Algorithm>(r));
}

template <TraceRecorder Trace>
struct BasicQueryResult {
  BasicSearchOutcome<Trace> outcome;
  bool cache_hit = false;
  Route algorithm_used = Route::Binary;
  // Probes executed to serve this query: 0 on a hit, trace probes on a miss.
  std::size_t kernel_probes = 0;
};

struct RegistryRow {
  DatasetId id;
  std::size_t n = 0;
  DistributionStats stats;
  AlgorithmChoice choice;
};

struct EngineReport {
  std::vector<RegistryRow> datasets;
  CacheStats cache;
};

// Cache check, then the dataset's memoized kernel choice, then cache fill.
// Not synchronized: one engine per execution context.
template <TraceRecorder Trace>
class BasicEngine {
 public:
  using Outcome = BasicSearchOutcome<Trace>;
  using QueryResult = BasicQueryResult<Trace>;

  explicit BasicEngine(EngineConfig cfg = {})
      : cfg_((cfg.validate(), cfg)), cache_(cfg_.cache_capacity) {}

  const EngineConfig& config() const noexcept { return cfg_; }

  // Stats and choice are computed once per distinct content.
  RegisteredDataset register_dataset(const SortedDataset& ds) {
    if (auto it = by_id_.find(ds.id()); it != by_id_.end()) return registry_[it->second];
    RegisteredDataset reg{ds, compute_stats(ds, cfg_.selector), {}};
    reg.choice = choose_algorithm(reg.stats, cfg_.selector);
    by_id_.emplace(ds.id(), registry_.size());
    registry_.push_back(reg);
    return reg;
  }

  QueryResult adaptive_search(const RegisteredDataset& reg, Key target) {
    const CacheKey key{reg.dataset.id(), target};
    if (auto cached = cache_.get(key)) {
      return QueryResult{std::move(*cached), true, Route::Cache, 0};
    }
    const Algorithm algorithm = cfg_.override_algorithm.value_or(reg.choice.algorithm);
    Outcome outcome = run_kernel<Trace>(algorithm, reg.dataset.values(), target);
    const std::size_t probes = outcome.trace.probes;
    cache_.put(key, outcome);
    return QueryResult{std::move(outcome), false, route_of(algorithm), probes};
  }

  EngineReport report() const {
    EngineReport r;
    r.datasets.reserve(registry_.size());
    for (const auto& reg : registry_) {
      r.datasets.push_back({reg.dataset.id(), reg.dataset.size(), reg.stats, reg.choice});
    }
    r.cache = cache_.stats();
    return r;
  }

  CacheStats cache_stats() const noexcept { return cache_.stats(); }

 private:
  EngineConfig cfg_;
  LruCache<CacheKey, Outcome, CacheKeyHash> cache_;
  std::vector<RegisteredDataset> registry_;
  std::unordered_map<DatasetId, std::size_t> by_id_;
};

using Engine = BasicEngine<ProbeTrace>;
using QueryResult = BasicQueryResult<ProbeTrace>;

}  // namespace adsearch
