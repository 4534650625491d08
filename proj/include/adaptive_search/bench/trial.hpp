#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "adaptive_search/bench/generate.hpp"
#include "adaptive_search/bench/random.hpp"
#include "adaptive_search/core_search.hpp"
#include "adaptive_search/engine.hpp"

namespace adsearch::bench {

// Raised when a measured answer disagrees with the linear-scan oracle.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class TrialAlgorithm : std::uint8_t { Binary, Interpolation, Linear, Adaptive };

constexpr std::string_view to_string(TrialAlgorithm a) noexcept {
  switch (a) {
    case TrialAlgorithm::Binary: return "binary";
    case TrialAlgorithm::Interpolation: return "interpolation";
    case TrialAlgorithm::Linear: return "linear";
    case TrialAlgorithm::Adaptive: return "adaptive";
  }
  return "?";
}

constexpr Algorithm kernel_of(TrialAlgorithm a) noexcept {
  switch (a) {
    case TrialAlgorithm::Interpolation: return Algorithm::Interpolation;
    case TrialAlgorithm::Linear: return Algorithm::Linear;
    default: return Algorithm::Binary;
  }
}

inline TrialAlgorithm parse_trial_algorithm(std::string_view s) {
  for (auto a : {TrialAlgorithm::Binary, TrialAlgorithm::Interpolation, TrialAlgorithm::Linear,
                 TrialAlgorithm::Adaptive}) {
    if (s == to_string(a)) return a;
  }
  throw std::invalid_argument(fmt::format("unknown algorithm '{}'", s));
}

enum class TargetMode : std::uint8_t {
  Members,  // uniform over dataset positions
  Mixed,    // 50% members, 50% uniform over [min, max]
};

constexpr std::string_view to_string(TargetMode m) noexcept {
  return m == TargetMode::Members ? "members" : "mixed";
}

inline TargetMode parse_target_mode(std::string_view s) {
  if (s == "members") return TargetMode::Members;
  if (s == "mixed") return TargetMode::Mixed;
  throw std::invalid_argument(fmt::format("unknown query mode '{}'", s));
}

struct QuerySpec {
  std::size_t count = 10'000;
  TargetMode mode = TargetMode::Members;
  // Each query after the first replays a uniformly chosen earlier query
  // with this probability.
  double repeat_fraction = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(repeat_fraction >= 0.0 && repeat_fraction <= 1.0))
      throw InvalidSpec("queries: repeat fraction must be in [0, 1]");
  }
};

inline std::vector<Key> make_queries(const SortedDataset& ds, const QuerySpec& q) {
  q.validate();
  std::vector<Key> out;
  if (q.count == 0) return out;
  if (ds.empty() && q.mode == TargetMode::Members) throw InvalidSpec("queries: members-only on an empty dataset");
  out.reserve(q.count);
  Rng rng(q.seed);
  for (std::size_t i = 0; i < q.count; ++i) {
    if (i > 0 && rng.unit() < q.repeat_fraction) {
      out.push_back(out[rng.below(i)]);
      continue;
    }
    const bool member = q.mode == TargetMode::Members || (!ds.empty() && rng.unit() < 0.5);
    if (member) {
      out.push_back(ds[rng.below(ds.size())]);
    } else {
      const Key lo = ds.empty() ? 0 : ds[0];
      const Key hi = ds.empty() ? 0 : ds[ds.size() - 1];
      out.push_back(rng.between(lo, hi));
    }
  }
  return out;
}

struct TrialRecord {
  TrialAlgorithm algorithm = TrialAlgorithm::Binary;
  std::string distribution;
  std::size_t n = 0;
  std::size_t queries = 0;
  double found_rate = 0.0;
  double mean_probes = 0.0;
  double p99_probes = 0.0;
  double cache_hit_rate = 0.0;
  std::uint64_t wall_time_ns = 0;
  std::string seed;
  // Probes actually executed (cache hits contribute 0). Not part of the
  // csv/jsonl schema.
  std::uint64_t kernel_probes = 0;
};

namespace detail {

// Nearest-rank quantile.
inline double quantile(std::vector<std::size_t> xs, double q) {
  if (xs.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size())));
  const std::size_t k = std::clamp<std::size_t>(rank, 1, xs.size()) - 1;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
  return static_cast<double>(xs[k]);
}

inline void check_answer(const SortedDataset& ds, Key target, std::optional<std::size_t> index,
                         bool against_oracle) {
  if (index && (*index >= ds.size() || ds[*index] != target))
    throw InvariantViolation(fmt::format("index {} does not hold target {}", *index, target));
  if (against_oracle && linear_search<ProbeCount>(ds, target).found() != index.has_value())
    throw InvariantViolation(fmt::format("found-ness for target {} disagrees with linear scan", target));
}

}  // namespace detail

// Runs one algorithm over a prepared dataset and query stream. Queries run
// sequentially on the calling thread; the clock covers only the query loop.
inline TrialRecord run_trial_on(const EngineConfig& engine_cfg, TrialAlgorithm algorithm,
                                const SortedDataset& ds, std::string distribution,
                                std::span<const Key> queries, std::string seed_label,
                                std::uint64_t check_seed) {
  using Clock = std::chrono::steady_clock;
  std::vector<std::size_t> probes(queries.size());
  std::vector<std::optional<std::size_t>> answers(queries.size());
  std::uint64_t kernel_probes = 0;
  std::uint64_t hits = 0;

  Clock::time_point start;
  Clock::time_point stop;
  if (algorithm == TrialAlgorithm::Adaptive) {
    BasicEngine<ProbeCount> engine(engine_cfg);
    const RegisteredDataset reg = engine.register_dataset(ds);
    start = Clock::now();
    for (std::size_t i = 0; i < queries.size(); ++i) {
      auto r = engine.adaptive_search(reg, queries[i]);
      probes[i] = r.outcome.trace.probes;
      answers[i] = r.outcome.index;
      kernel_probes += r.kernel_probes;
      hits += r.cache_hit ? 1 : 0;
    }
    stop = Clock::now();
  } else {
    const Algorithm kernel = kernel_of(algorithm);
    const auto values = ds.values();
    start = Clock::now();
    for (std::size_t i = 0; i < queries.size(); ++i) {
      auto out = run_kernel<ProbeCount>(kernel, values, queries[i]);
      probes[i] = out.trace.probes;
      answers[i] = out.index;
      kernel_probes += out.trace.probes;
    }
    stop = Clock::now();
  }

  // Every returned index is checked; found-ness is compared with the linear
  // oracle on a seeded ~1% subsample (at least one query).
  Rng pick(check_seed);
  const std::size_t forced = queries.empty() ? 0 : pick.below(queries.size());
  std::size_t found = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const bool oracle = i == forced || pick.unit() < 0.01;
    detail::check_answer(ds, queries[i], answers[i], oracle);
    found += answers[i] ? 1 : 0;
  }

  TrialRecord rec;
  rec.algorithm = algorithm;
  rec.distribution = std::move(distribution);
  rec.n = ds.size();
  rec.queries = queries.size();
  rec.seed = std::move(seed_label);
  rec.kernel_probes = kernel_probes;
  rec.wall_time_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  if (!queries.empty()) {
    const auto q = static_cast<double>(queries.size());
    std::uint64_t total = 0;
    for (auto p : probes) total += p;
    rec.found_rate = static_cast<double>(found) / q;
    rec.mean_probes = static_cast<double>(total) / q;
    rec.cache_hit_rate = static_cast<double>(hits) / q;
    rec.p99_probes = detail::quantile(std::move(probes), 0.99);
  }
  return rec;
}

inline std::string seed_label(std::uint64_t dataset_seed, std::uint64_t query_seed) {
  return fmt::format("{}:{}", dataset_seed, query_seed);
}

inline TrialRecord run_trial(const EngineConfig& engine_cfg, TrialAlgorithm algorithm,
                             const DistributionSpec& spec, const QuerySpec& query_spec) {
  const SortedDataset ds = generate(spec);
  const std::vector<Key> queries = make_queries(ds, query_spec);
  return run_trial_on(engine_cfg, algorithm, ds, spec.summary(), queries,
                      seed_label(spec.seed, query_spec.seed), derive_seed(query_spec.seed, 0xc4ec));
}

struct SuiteConfig {
  struct Distribution {
    DistributionKind kind = DistributionKind::Uniform;
    DistributionParams params;
  };

  std::vector<Distribution> distributions;
  std::vector<std::size_t> sizes;
  std::vector<TrialAlgorithm> algorithms;
  // count/mode/repeat_fraction apply to every cell; the seed is derived.
  QuerySpec queries;
  EngineConfig engine;
  std::uint64_t seed = 0;

  // Uniform and Exponential at n in {2^10, 2^14, 2^18, 2^20}, all four
  // algorithms, 10^4 member queries per cell.
  static SuiteConfig defaults(std::uint64_t seed) {
    SuiteConfig cfg;
    cfg.distributions = {{DistributionKind::Uniform, {}}, {DistributionKind::Exponential, {}}};
    cfg.sizes = {std::size_t{1} << 10, std::size_t{1} << 14, std::size_t{1} << 18, std::size_t{1} << 20};
    cfg.algorithms = {TrialAlgorithm::Binary, TrialAlgorithm::Interpolation, TrialAlgorithm::Linear,
                      TrialAlgorithm::Adaptive};
    cfg.seed = seed;
    return cfg;
  }
};

// One record per (distribution, size, algorithm). All algorithms in a
// (distribution, size) group see the same dataset and the same query stream.
inline std::vector<TrialRecord> run_suite(const SuiteConfig& cfg) {
  cfg.engine.validate();
  std::vector<TrialRecord> records;
  records.reserve(cfg.distributions.size() * cfg.sizes.size() * cfg.algorithms.size());
  for (const auto& dist : cfg.distributions) {
    for (const std::size_t n : cfg.sizes) {
      DistributionSpec spec{dist.kind, n, 0, dist.params};
      spec.seed = derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(dist.kind)), n);
      QuerySpec qspec = cfg.queries;
      qspec.seed = derive_seed(spec.seed, 0x9e37);

      SortedDataset ds;
      std::vector<Key> queries;
      try {
        ds = generate(spec);
        queries = make_queries(ds, qspec);
      } catch (const InvalidSpec& e) {
        throw InvalidSpec(fmt::format("cell {} n={}: {}", to_string(dist.kind), n, e.what()));
      }
      const std::string summary = spec.summary();
      const std::string label = seed_label(spec.seed, qspec.seed);
      for (const auto algorithm : cfg.algorithms) {
        records.push_back(run_trial_on(cfg.engine, algorithm, ds, summary, queries, label,
                                       derive_seed(qspec.seed, 0xc4ec)));
      }
    }
  }
  return records;
}

}  // namespace adsearch::bench
