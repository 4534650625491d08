#pragma once

// Test-only oracles. Kept independent of the library's code paths.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace adsearch::testing {

// Calls f(v) for every nondecreasing vector of length 0..max_len with
// entries in [0, max_value].
template <class F>
void for_each_nondecreasing(std::size_t max_len, std::int64_t max_value, F&& f) {
  std::vector<std::int64_t> v;
  auto rec = [&](auto&& self, std::int64_t floor) -> void {
    f(v);
    if (v.size() == max_len) return;
    for (std::int64_t x = floor; x <= max_value; ++x) {
      v.push_back(x);
      self(self, x);
      v.pop_back();
    }
  };
  rec(rec, 0);
}

// Population CV of all consecutive gaps, straightforward double two-pass.
inline double brute_gap_cv(const std::vector<std::int64_t>& v) {
  if (v.size() < 2) return 0.0;
  std::vector<double> gaps;
  for (std::size_t i = 1; i < v.size(); ++i) gaps.push_back(static_cast<double>(v[i]) - static_cast<double>(v[i - 1]));
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  if (mean == 0.0) return 0.0;
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size());
  return std::sqrt(var) / mean;
}

// Index-free membership oracle.
inline bool contains(const std::vector<std::int64_t>& v, std::int64_t t) {
  for (auto x : v)
    if (x == t) return true;
  return false;
}

}  // namespace adsearch::testing
