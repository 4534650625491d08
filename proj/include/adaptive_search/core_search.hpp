#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "adaptive_search/dataset.hpp"

namespace adsearch {

enum class Algorithm : std::uint8_t { Binary, Interpolation, Linear };

constexpr std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Binary: return "binary";
    case Algorithm::Interpolation: return "interpolation";
    case Algorithm::Linear: return "linear";
  }
  return "?";
}

// A probe is one read of an element that is compared against the target.
// ProbeTrace keeps every probed index in order; probes == visited.size().
struct ProbeTrace {
  Algorithm algorithm = Algorithm::Binary;
  std::size_t probes = 0;
  std::vector<std::size_t> visited;

  void record(std::size_t i) {
    ++probes;
    visited.push_back(i);
  }
  void record_prefix(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) record(i);
  }

  friend bool operator==(const ProbeTrace&, const ProbeTrace&) = default;
};

// Count-only trace for measurement loops where the visited list would
// dominate the cost.
struct ProbeCount {
  Algorithm algorithm = Algorithm::Binary;
  std::size_t probes = 0;

  void record(std::size_t) noexcept { ++probes; }
  void record_prefix(std::size_t count) noexcept { probes += count; }

  friend bool operator==(const ProbeCount&, const ProbeCount&) = default;
};

template <class T>
concept TraceRecorder = std::regular<T> && requires(T t, std::size_t i) {
  t.record(i);
  t.record_prefix(i);
  { t.probes } -> std::convertible_to<std::size_t>;
  { t.algorithm } -> std::convertible_to<Algorithm>;
};

template <TraceRecorder Trace>
struct BasicSearchOutcome {
  std::optional<std::size_t> index;
  Trace trace;

  bool found() const noexcept { return index.has_value(); }

  friend bool operator==(const BasicSearchOutcome&, const BasicSearchOutcome&) = default;
};

using SearchOutcome = BasicSearchOutcome<ProbeTrace>;

// Midpoint rule lo + (hi - lo) / 2; at most floor(log2 n) + 1 probes.
template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> binary_search(std::span<const Key> values, Key target) {
  BasicSearchOutcome<Trace> out;
  out.trace.algorithm = Algorithm::Binary;
  std::ptrdiff_t lo = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(values.size()) - 1;
  while (lo <= hi) {
    const std::ptrdiff_t mid = lo + (hi - lo) / 2;
    const Key probe = values[static_cast<std::size_t>(mid)];
    out.trace.record(static_cast<std::size_t>(mid));
    if (probe == target) {
      out.index = static_cast<std::size_t>(mid);
      return out;
    }
    if (probe < target) {
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return out;
}

// Linear-interpolation position estimate between the current endpoints.
// The loop keeps values[lo] <= target <= values[hi]; position arithmetic is
// 128-bit so wide key ranges cannot overflow.
template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> interpolation_search(std::span<const Key> values, Key target) {
  BasicSearchOutcome<Trace> out;
  out.trace.algorithm = Algorithm::Interpolation;
  if (values.empty()) return out;
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo <= hi && target >= values[lo] && target <= values[hi]) {
    if (values[lo] == values[hi]) {
      // Equal endpoints: the formula would divide by zero. The guard above
      // already pins target == values[lo].
      out.trace.record(lo);
      if (values[lo] == target) out.index = lo;
      return out;
    }
    const __int128 key_span = static_cast<__int128>(values[hi]) - values[lo];
    const __int128 offset = static_cast<__int128>(target) - values[lo];
    const auto pos =
        lo + static_cast<std::size_t>(static_cast<__int128>(hi - lo) * offset / key_span);
    const Key probe = values[pos];
    out.trace.record(pos);
    if (probe == target) {
      out.index = pos;
      return out;
    }
    if (probe < target) {
      lo = pos + 1;
    } else {
      // probe > target >= values[lo] implies pos > lo, so pos - 1 cannot wrap.
      hi = pos - 1;
    }
  }
  return out;
}

// First occurrence; probes equals the number of elements examined. Works on
// unsorted input, which is what makes it the correctness oracle.
template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> linear_search(std::span<const Key> values, Key target) {
  BasicSearchOutcome<Trace> out;
  out.trace.algorithm = Algorithm::Linear;
  const auto it = std::find(values.begin(), values.end(), target);
  const auto examined = static_cast<std::size_t>(it - values.begin());
  if (it != values.end()) {
    out.index = examined;
    out.trace.record_prefix(examined + 1);
  } else {
    out.trace.record_prefix(examined);
  }
  return out;
}

template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> run_kernel(Algorithm algorithm, std::span<const Key> values,
                                     Key target) {
  switch (algorithm) {
    case Algorithm::Binary: return binary_search<Trace>(values, target);
    case Algorithm::Interpolation: return interpolation_search<Trace>(values, target);
    case Algorithm::Linear: return linear_search<Trace>(values, target);
  }
  return linear_search<Trace>(values, target);
}

template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> binary_search(const SortedDataset& ds, Key target) {
  return binary_search<Trace>(ds.values(), target);
}

template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> interpolation_search(const SortedDataset& ds, Key target) {
  return interpolation_search<Trace>(ds.values(), target);
}

template <TraceRecorder Trace = ProbeTrace>
BasicSearchOutcome<Trace> linear_search(const SortedDataset& ds, Key target) {
  return linear_search<Trace>(ds.values(), target);
}

}  // namespace adsearch
