#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace adsearch {

using Key = std::int64_t;

// Content digest of a value sequence. Used as the cache key component that
// identifies a dataset in O(1).
struct DatasetId {
  std::uint64_t digest = 0;

  friend bool operator==(const DatasetId&, const DatasetId&) = default;

  std::string to_string() const { return fmt::format("{:016x}", digest); }
};

// FNV-1a over the little-endian bytes of each value, then the murmur3
// 64-bit finalizer for avalanche.
inline DatasetId fingerprint(std::span<const Key> values) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Key v : values) {
    auto u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return DatasetId{h};
}

/// Base class for every error raised while ingesting dataset content.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, std::string text)
      : DataError(fmt::format("line {}: not a base-10 integer: '{}'", line, text)),
        line_(line),
        text_(std::move(text)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::size_t line_;
  std::string text_;
};

class OverflowError : public DataError {
 public:
  OverflowError(std::size_t line, std::string text)
      : DataError(fmt::format("line {}: integer out of 64-bit range: '{}'", line, text)),
        line_(line),
        text_(std::move(text)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& text() const noexcept { return text_; }

 private:
  std::size_t line_;
  std::string text_;
};

class NotSortedError : public DataError {
 public:
  explicit NotSortedError(std::size_t index)
      : DataError(fmt::format("values decrease at index {}", index)), index_(index) {}

  /// First index i with values[i] < values[i-1].
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Immutable nondecreasing sequence of keys. Copies share storage.
class SortedDataset {
 public:
  SortedDataset() : SortedDataset(std::vector<Key>{}) {}

  // Throws NotSortedError if the values ever decrease.
  explicit SortedDataset(std::vector<Key> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] < values[i - 1]) throw NotSortedError(i);
    }
    id_ = fingerprint(values);
    values_ = std::make_shared<const std::vector<Key>>(std::move(values));
  }

  std::span<const Key> values() const noexcept { return *values_; }
  std::size_t size() const noexcept { return values_->size(); }
  bool empty() const noexcept { return values_->empty(); }
  Key operator[](std::size_t i) const noexcept { return (*values_)[i]; }
  DatasetId id() const noexcept { return id_; }

  friend bool operator==(const SortedDataset& a, const SortedDataset& b) {
    return a.id_ == b.id_ && *a.values_ == *b.values_;
  }

 private:
  std::shared_ptr<const std::vector<Key>> values_;
  DatasetId id_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

inline Key parse_key(std::string_view raw, std::size_t line_no) {
  std::string_view text = trim(raw);
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') {
    digits.remove_prefix(1);
    if (!digits.empty() && digits.front() == '-') throw ParseError(line_no, std::string(text));
  }
  Key value{};
  const char* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value, 10);
  if (ec == std::errc::result_out_of_range) throw OverflowError(line_no, std::string(text));
  if (ec != std::errc{} || ptr != end) throw ParseError(line_no, std::string(text));
  return value;
}

}  // namespace detail

// Reads one integer per line. Blank and whitespace-only lines are skipped,
// CR before LF is stripped. Sortedness is verified, not assumed.
inline SortedDataset load_dataset(std::istream& in) {
  std::vector<Key> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    values.push_back(detail::parse_key(line, line_no));
  }
  return SortedDataset(std::move(values));
}

inline void write_dataset(std::ostream& out, const SortedDataset& ds) {
  for (Key v : ds.values()) out << v << '\n';
}

}  // namespace adsearch

template <>
struct std::hash<adsearch::DatasetId> {
  std::size_t operator()(const adsearch::DatasetId& id) const noexcept {
    return static_cast<std::size_t>(id.digest);
  }
};
