#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <list>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "adaptive_search/dataset.hpp"

namespace adsearch {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;
  std::size_t size = 0;
  std::size_t capacity = 0;

  double hit_rate() const noexcept {
    const auto lookups = hits + misses;
    return lookups == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(lookups);
  }

  friend bool operator==(const CacheStats&, const CacheStats&) = default;
};

// Bounded map with least-recently-used eviction. The recency list runs from
// least (front) to most (back) recently used; the index maps each key to its
// list node. Not synchronized: callers serialize access.
template <class K, class V, class Hash = std::hash<K>>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("LruCache: capacity must be >= 1");
    index_.reserve(capacity);
  }

  // Hit: returns the value and marks the key most recent. Miss: no state
  // change other than the miss counter.
  std::optional<V> get(const K& key) {
    auto it = index_.find(key);
    if (it == index_.end()) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    recency_.splice(recency_.end(), recency_, it->second);
    return it->second->second;
  }

  void put(const K& key, V value) {
    if (auto it = index_.find(key); it != index_.end()) {
      it->second->second = std::move(value);
      recency_.splice(recency_.end(), recency_, it->second);
      return;
    }
    if (index_.size() >= capacity_) {
      // Recycle the evicted list and index nodes so a full cache stops allocating.
      auto node = index_.extract(recency_.front().first);
      recency_.front() = Node(key, std::move(value));
      recency_.splice(recency_.end(), recency_, recency_.begin());
      node.key() = key;
      node.mapped() = std::prev(recency_.end());
      index_.insert(std::move(node));
      ++evictions_;
      return;
    }
    recency_.emplace_back(key, std::move(value));
    index_.emplace(key, std::prev(recency_.end()));
  }

  bool contains(const K& key) const { return index_.contains(key); }
  std::size_t size() const noexcept { return index_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }

  CacheStats stats() const noexcept {
    return {hits_, misses_, evictions_, index_.size(), capacity_};
  }

  // Keys from least to most recently used.
  template <class F>
  void for_each_key(F&& f) const {
    for (const auto& [k, v] : recency_) f(k);
  }

 private:
  using Node = std::pair<K, V>;

  std::size_t capacity_;
  std::list<Node> recency_;
  std::unordered_map<K, typename std::list<Node>::iterator, Hash> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t evictions_ = 0;
};

struct CacheKey {
  DatasetId dataset;
  Key target = 0;

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const noexcept {
    std::uint64_t h = k.dataset.digest ^ (static_cast<std::uint64_t>(k.target) + 0x9e3779b97f4a7c15ULL);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace adsearch
