#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bloomrf/dyadic.hpp"
#include "bloomrf/error.hpp"

namespace bloomrf {

/// Sorted, deduplicated key set answering point and range emptiness exactly.
/// Ground truth for measuring filters.
class exact_set {
 public:
  exact_set() = default;
  explicit exact_set(std::span<const key_type> keys) : keys_(keys.begin(), keys.end()) {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }

  bool contains(key_type key) const { return std::binary_search(keys_.begin(), keys_.end(), key); }

  /// True iff some key lies in [lo, hi]. Throws error{invalid_range}.
  bool intersects(key_type lo, key_type hi) const {
    if (lo > hi) throw error(errc::invalid_range, "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), lo);
    return it != keys_.end() && *it <= hi;
  }

  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  const std::vector<key_type>& keys() const noexcept { return keys_; }

 private:
  std::vector<key_type> keys_;
};

}  // namespace bloomrf
