#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "adaptive_search/core_search.hpp"
#include "adaptive_search/dataset.hpp"

namespace adsearch {

struct SelectorConfig {
  // Upper bound on the gap coefficient of variation for which interpolation
  // is chosen. iid-uniform keys have gap CV close to 1.0.
  double tau = 1.25;
  std::size_t min_interp_len = 16;
  std::size_t max_gap_samples = 4096;

  void validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("selector: tau must be > 0");
    if (min_interp_len < 2) throw std::invalid_argument("selector: min_interp_len must be >= 2");
    if (max_gap_samples < 2) throw std::invalid_argument("selector: max_gap_samples must be >= 2");
  }
};

// Gap statistics of a sorted dataset. gap_std is the population standard
// deviation of consecutive differences; uniformity_score is their
// coefficient of variation (0 when every gap is equal or there are no gaps).
struct DistributionStats {
  std::size_t n = 0;
  Key min_value = 0;
  Key max_value = 0;
  std::size_t gaps_examined = 0;
  double gap_mean = 0.0;
  double gap_std = 0.0;
  double uniformity_score = 0.0;
  bool sampled = false;

  friend bool operator==(const DistributionStats&, const DistributionStats&) = default;
};

enum class ChoiceReason : std::uint8_t { TooSmall, UniformEnough, TooIrregular, Degenerate };

constexpr std::string_view to_string(ChoiceReason r) noexcept {
  switch (r) {
    case ChoiceReason::TooSmall: return "too-small";
    case ChoiceReason::UniformEnough: return "uniform-enough";
    case ChoiceReason::TooIrregular: return "too-irregular";
    case ChoiceReason::Degenerate: return "degenerate";
  }
  return "?";
}

struct AlgorithmChoice {
  Algorithm algorithm = Algorithm::Binary;
  ChoiceReason reason = ChoiceReason::TooSmall;

  friend bool operator==(const AlgorithmChoice&, const AlgorithmChoice&) = default;
};

namespace detail {

// Exact for any pair of int64 with b >= a.
inline std::uint64_t gap(Key a, Key b) noexcept {
  return static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
}

}  // namespace detail

// Exact over all n-1 gaps when they fit in cfg.max_gap_samples, otherwise
// over gaps at indices floor(i * (n-1) / max_gap_samples).
inline DistributionStats compute_stats(std::span<const Key> values, const SelectorConfig& cfg) {
  DistributionStats s;
  s.n = values.size();
  if (s.n == 0) return s;
  s.min_value = values.front();
  s.max_value = values.back();
  if (s.n < 2) return s;

  const std::size_t gap_count = s.n - 1;
  s.sampled = gap_count > cfg.max_gap_samples;
  const std::size_t m = s.sampled ? cfg.max_gap_samples : gap_count;
  s.gaps_examined = m;

  auto gap_at = [&](std::size_t i) {
    const std::size_t j =
        s.sampled ? static_cast<std::size_t>(static_cast<unsigned __int128>(i) * gap_count / m) : i;
    return detail::gap(values[j], values[j + 1]);
  };

  // long double holds every uint64 gap exactly on x86-64.
  long double sum = 0.0L;
  std::uint64_t lo = UINT64_MAX;
  std::uint64_t hi = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t g = gap_at(i);
    sum += static_cast<long double>(g);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  const long double mean = sum / static_cast<long double>(m);
  s.gap_mean = static_cast<double>(mean);
  if (lo == hi) return s;  // all gaps equal: std and score stay exactly 0

  long double sq = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    const long double d = static_cast<long double>(gap_at(i)) - mean;
    sq += d * d;
  }
  const long double sd = std::sqrt(sq / static_cast<long double>(m));
  s.gap_std = static_cast<double>(sd);
  s.uniformity_score = static_cast<double>(sd / mean);
  return s;
}

inline DistributionStats compute_stats(const SortedDataset& ds, const SelectorConfig& cfg) {
  return compute_stats(ds.values(), cfg);
}

inline AlgorithmChoice choose_algorithm(const DistributionStats& stats, const SelectorConfig& cfg) {
  if (stats.n < cfg.min_interp_len) return {Algorithm::Binary, ChoiceReason::TooSmall};
  if (stats.gap_mean == 0.0) return {Algorithm::Binary, ChoiceReason::Degenerate};
  if (stats.uniformity_score <= cfg.tau) return {Algorithm::Interpolation, ChoiceReason::UniformEnough};
  return {Algorithm::Binary, ChoiceReason::TooIrregular};
}

}  // namespace adsearch
