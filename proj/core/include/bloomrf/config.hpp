#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bloomrf/dyadic.hpp"

namespace bloomrf {

inline constexpr std::uint64_t default_seed = 0x9e3779b97f4a7c15ULL;
inline constexpr unsigned default_early_stop_threshold = 3;
inline constexpr unsigned max_hashes_per_layer = 16;
/// Largest exact layer accepted (2^36 bits = 8 GiB).
inline constexpr unsigned max_exact_level = 36;

/// Complete description of a filter instance.
///
/// Per-layer vectors are indexed by layer 0..L. hashes[0] is always 0: the
/// exact layer (if any) is a plain bitmap. segment_of[0] names the exact
/// segment and is ignored when there is no exact layer.
struct filter_config {
  layer_layout layout;
  std::vector<unsigned> hashes;
  std::vector<unsigned> segment_of;
  std::vector<std::uint64_t> segment_bits;
  std::optional<unsigned> early_stop_threshold = default_early_stop_threshold;
  unsigned start_layer = 1;
  std::uint64_t seed = default_seed;

  bool has_exact_layer() const noexcept { return layout.has_exact_layer(); }
  std::uint64_t total_bits() const noexcept;
  /// True for hashed layers that are written and probed.
  bool probed(unsigned layer) const noexcept { return layer >= start_layer && layer <= layout.layers(); }

  bool operator==(const filter_config&) const = default;
};

/// Throws error{invalid_config} naming the first violated constraint.
void validate(const filter_config& config);

/// Single shared segment, one hash per layer, no exact layer. `heights` must
/// start with 0.
filter_config make_basic_config(unsigned width, std::vector<unsigned> heights, std::uint64_t total_bits,
                                std::uint64_t seed = default_seed);

/// Uniform-trace height vector without exact layer: (0, width mod h, h, ..., h).
std::vector<unsigned> uniform_heights(unsigned width, unsigned trace_height);

}  // namespace bloomrf
