#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "adaptive_search/bench/random.hpp"
#include "adaptive_search/dataset.hpp"

namespace adsearch::bench {

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DistributionKind : std::uint8_t { Uniform, Clustered, Exponential, Zipf };

constexpr std::string_view to_string(DistributionKind k) noexcept {
  switch (k) {
    case DistributionKind::Uniform: return "uniform";
    case DistributionKind::Clustered: return "clustered";
    case DistributionKind::Exponential: return "exponential";
    case DistributionKind::Zipf: return "zipf";
  }
  return "?";
}

inline DistributionKind parse_distribution_kind(std::string_view s) {
  for (auto k : {DistributionKind::Uniform, DistributionKind::Clustered,
                 DistributionKind::Exponential, DistributionKind::Zipf}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidSpec(fmt::format("unknown distribution '{}'", s));
}

// Only the fields for the chosen kind are read.
struct DistributionParams {
  // uniform: keys in [lo, hi]; clustered: cluster centres in [lo, hi]
  Key lo = 0;
  Key hi = Key{1} << 32;
  std::size_t clusters = 16;
  double spread = 1.0e4;
  // exponential: key = floor(scale * E), E ~ Exp(1)
  double scale = 1.0e12;
  double zipf_s = 1.2;
  std::uint64_t universe = 1'000'000;
};

struct DistributionSpec {
  DistributionKind kind = DistributionKind::Uniform;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  DistributionParams params;

  void validate() const {
    const auto& p = params;
    switch (kind) {
      case DistributionKind::Uniform:
        if (p.lo > p.hi) throw InvalidSpec("uniform: lo > hi");
        break;
      case DistributionKind::Clustered:
        if (p.lo > p.hi) throw InvalidSpec("clustered: lo > hi");
        if (p.clusters < 1) throw InvalidSpec("clustered: need at least one cluster");
        if (!(p.spread >= 0.0) || !std::isfinite(p.spread)) throw InvalidSpec("clustered: spread must be finite and >= 0");
        // centre + 40 sigma must stay well inside int64
        if (std::abs(static_cast<double>(p.lo)) + std::abs(static_cast<double>(p.hi)) + 40.0 * p.spread > 9.0e18)
          throw InvalidSpec("clustered: key range too wide");
        break;
      case DistributionKind::Exponential:
        if (!(p.scale > 0.0) || p.scale > 2.0e17) throw InvalidSpec("exponential: scale must be in (0, 2e17]");
        break;
      case DistributionKind::Zipf:
        if (!(p.zipf_s > 0.0) || !std::isfinite(p.zipf_s)) throw InvalidSpec("zipf: exponent s must be > 0");
        if (p.universe < 1 || p.universe > 100'000'000) throw InvalidSpec("zipf: universe must be in [1, 1e8]");
        break;
    }
  }

  // Compact, comma-free description used in reports.
  std::string summary() const {
    const auto& p = params;
    switch (kind) {
      case DistributionKind::Uniform: return fmt::format("uniform;lo={};hi={}", p.lo, p.hi);
      case DistributionKind::Clustered:
        return fmt::format("clustered;lo={};hi={};c={};spread={}", p.lo, p.hi, p.clusters, p.spread);
      case DistributionKind::Exponential: return fmt::format("exponential;scale={}", p.scale);
      case DistributionKind::Zipf: return fmt::format("zipf;s={};m={}", p.zipf_s, p.universe);
    }
    return "?";
  }
};

namespace detail {

inline std::vector<Key> draw_zipf(const DistributionSpec& spec, Rng& rng) {
  const auto m = static_cast<std::size_t>(spec.params.universe);
  std::vector<double> cumulative(m);
  double total = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    total += std::pow(static_cast<double>(k), -spec.params.zipf_s);
    cumulative[k - 1] = total;
  }
  std::vector<Key> out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double u = rng.unit() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto rank = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), m - 1);
    out.push_back(static_cast<Key>(rank + 1));
  }
  return out;
}

}  // namespace detail

// Deterministic in (kind, n, seed, params). Output is sorted; duplicates are
// possible for every kind.
inline SortedDataset generate(const DistributionSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const auto& p = spec.params;
  std::vector<Key> values;
  values.reserve(spec.n);
  switch (spec.kind) {
    case DistributionKind::Uniform:
      for (std::size_t i = 0; i < spec.n; ++i) values.push_back(rng.between(p.lo, p.hi));
      break;
    case DistributionKind::Clustered: {
      std::vector<Key> centres(p.clusters);
      for (auto& c : centres) c = rng.between(p.lo, p.hi);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const Key c = centres[rng.below(centres.size())];
        values.push_back(c + static_cast<Key>(std::llround(rng.normal() * p.spread)));
      }
      break;
    }
    case DistributionKind::Exponential:
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double e = -std::log(1.0 - rng.unit());
        values.push_back(static_cast<Key>(std::floor(p.scale * e)));
      }
      break;
    case DistributionKind::Zipf:
      values = detail::draw_zipf(spec, rng);
      break;
  }
  std::sort(values.begin(), values.end());
  return SortedDataset(std::move(values));
}

}  // namespace adsearch::bench
