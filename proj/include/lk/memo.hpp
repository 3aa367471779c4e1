#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace lk {

// Concurrent memo table split into independently locked shards. A shard
// that grows past its cap is cleared, which bounds memory without affecting
// results.
template <class Key, class Value, class Hash = std::hash<Key>, std::size_t Shards = 64>
class ShardedMemo {
 public:
  explicit ShardedMemo(std::size_t cap_per_shard = 1u << 16) : cap_(cap_per_shard) {}

  template <class F>
  Value get_or_compute(const Key& key, F&& compute) {
    const std::size_t h = Hash{}(key);
    Shard& shard = shards_[(h ^ (h >> 29)) % Shards];
    {
      std::shared_lock lock(shard.mu);
      if (auto it = shard.map.find(key); it != shard.map.end()) return it->second;
    }
    Value value = compute();
    std::unique_lock lock(shard.mu);
    if (shard.map.size() >= cap_) shard.map.clear();
    shard.map.emplace(key, value);
    return value;
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& s : shards_) {
      std::shared_lock lock(s.mu);
      total += s.map.size();
    }
    return total;
  }

 private:
  struct Shard {
    mutable std::shared_mutex mu;
    std::unordered_map<Key, Value, Hash> map;
  };
  std::size_t cap_;
  std::array<Shard, Shards> shards_;
};

}  // namespace lk
