#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bloomrf/bit_array.hpp"

namespace bloomrf {

/// Plain Bloom filter with double hashing; the point-query baseline.
class classic_bloom {
 public:
  classic_bloom(std::uint64_t bits, unsigned hashes) : bits_((bits + 63) / 64 * 64), hashes_(hashes) {}

  static unsigned optimal_hashes(double bits_per_key) {
    return static_cast<unsigned>(std::max(1.0, std::round(bits_per_key * 0.6931471805599453)));
  }

  void insert(std::uint64_t key) noexcept {
    auto [h1, h2] = hash(key);
    for (unsigned i = 0; i < hashes_; ++i) bits_.set((h1 + i * h2) % bits_.size());
  }

  bool contains(std::uint64_t key) const noexcept {
    auto [h1, h2] = hash(key);
    for (unsigned i = 0; i < hashes_; ++i) {
      if (!bits_.test((h1 + i * h2) % bits_.size())) return false;
    }
    return true;
  }

  std::uint64_t size_bits() const noexcept { return bits_.size(); }
  unsigned hashes() const noexcept { return hashes_; }

 private:
  static std::pair<std::uint64_t, std::uint64_t> hash(std::uint64_t x) noexcept {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return {x, (x >> 32 | x << 32) | 1};
  }

  bit_array bits_;
  unsigned hashes_;
};

}  // namespace bloomrf
