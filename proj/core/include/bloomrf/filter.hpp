#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "bloomrf/bit_array.hpp"
#include "bloomrf/config.hpp"
#include "bloomrf/hashing.hpp"

namespace bloomrf {

/// One trace element inspected by a range lookup.
struct probe_record {
  unsigned layer = 0;
  key_type tree_lo = 0;        // first key of the probed Trace-Tree (or exact interval)
  std::uint64_t mask = 0;      // query mask over the trace
  std::uint64_t element = 0;   // fetched element (AND over replicas)
};

/// Optional instrumentation for range_lookup().
struct lookup_trace {
  std::vector<probe_record> probes;

  std::size_t fetches(unsigned layer) const noexcept;
};

struct occupancy_report {
  /// Set-bit fraction per segment.
  std::vector<double> segment_fill;
  /// Per layer: mean set bits over every trace-aligned element of the layer's
  /// segment. Non-decreasing under inserts. Layer 0 reports the exact fill.
  std::vector<double> mean_element_bits;
  /// Per layer: mean set bits over the non-empty elements only, i.e. the
  /// average occupation of a trace that holds anything.
  std::vector<double> mean_occupied_element_bits;
};

/// Online point-range filter over Dyadic Trace-Trees.
///
/// insert(), point_lookup() and range_lookup() may run concurrently from any
/// number of threads. A lookup that starts after an insert returned (in the
/// happens-before sense) observes all of that insert's bits.
class filter {
 public:
  /// Throws error{invalid_config}.
  explicit filter(filter_config config);

  filter(const filter& other);
  filter& operator=(const filter& other);
  filter(filter&& other) noexcept;
  filter& operator=(filter&& other) noexcept;

  void insert(key_type key);
  bool point_lookup(key_type key) const;
  /// Throws error{invalid_range} if lo > hi.
  bool range_lookup(key_type lo, key_type hi, lookup_trace* trace = nullptr) const;

  occupancy_report occupancy() const;

  const filter_config& config() const noexcept { return config_; }
  std::uint64_t key_count() const noexcept { return key_count_.load(std::memory_order_acquire); }
  std::size_t segment_count() const noexcept { return segments_.size(); }
  const bit_array& segment(std::size_t j) const { return segments_.at(j); }
  /// Mutable raw storage, for deserialization and fault-injection tests.
  bit_array& segment(std::size_t j) { return segments_.at(j); }
  void set_key_count(std::uint64_t n) noexcept { key_count_.store(n, std::memory_order_release); }

 private:
  std::uint64_t fetch_element(unsigned layer, key_type key) const noexcept;
  void check_key(key_type key) const;

  filter_config config_;
  std::vector<bit_array> segments_;
  std::vector<layer_addressing> layers_;  // indexed by layer; [0] unused
  std::atomic<std::uint64_t> key_count_{0};
};

}  // namespace bloomrf
