#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bloomrf {

using key_type = std::uint64_t;

/// Mask with the low `bits` bits set; valid for bits in [0, 64].
constexpr std::uint64_t low_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Widest trace a single machine word can hold: 2^6 = 64 positions, so a
/// hashed layer spans at most 7 dyadic levels.
inline constexpr unsigned max_trace_bits = 6;

/// Geometry of a Dyadic Trace-Tree over a `width`-bit domain.
///
/// Layer 0 is the optional exact layer (heights[0] == 0 means there is none);
/// layers 1..L are hashed Trace-Tree layers, layer L being the leaf layer whose
/// bottom level is the key itself. A layer-i Trace-Tree is rooted at level
/// bottom_levels[i-1] + 1 and its trace holds the 2^trace_bits[i] intervals of
/// level bottom_levels[i] below that root.
struct layer_layout {
  unsigned width = 0;
  std::vector<unsigned> heights;
  std::vector<unsigned> bottom_levels;
  std::vector<unsigned> trace_bits;  // trace_bits[0] is unused (0)
  std::vector<double> tt_counts;     // Trace-Trees per layer; tt_counts[0] = 0
  double tt_max = 0;

  unsigned layers() const noexcept { return static_cast<unsigned>(heights.size()) - 1; }
  bool has_exact_layer() const noexcept { return heights.front() > 0; }
  unsigned exact_level() const noexcept { return bottom_levels.front(); }

  /// Number of low key bits spanned by one trace position on `layer`.
  unsigned position_shift(unsigned layer) const noexcept { return width - bottom_levels[layer]; }
  /// Number of low key bits spanned by one whole Trace-Tree on `layer`.
  unsigned tree_shift(unsigned layer) const noexcept { return width - bottom_levels[layer - 1] - 1; }
  unsigned trace_size(unsigned layer) const noexcept { return 1u << trace_bits[layer]; }

  key_type max_key() const noexcept { return low_mask(width); }

  bool operator==(const layer_layout&) const = default;
};

/// Validates `heights` against `width` and derives the per-layer geometry.
/// Throws error{sum_mismatch | zero_height | trace_too_wide | unsupported_width}.
layer_layout build_layout(unsigned width, std::span<const unsigned> heights);

/// The dyadic interval x^level: all keys sharing the top `level` bits.
struct dyadic_interval {
  unsigned level = 0;
  key_type lo = 0;
  key_type hi = 0;

  bool operator==(const dyadic_interval&) const = default;
};

dyadic_interval covering_interval(unsigned width, key_type key, unsigned level);

/// Canonical (greedy, maximal) decomposition of [lo, hi] into dyadic
/// intervals, in ascending key order.
std::vector<dyadic_interval> dyadic_decompose(unsigned width, key_type lo, key_type hi);

/// Mask over the trace of the layer-`layer` Trace-Tree containing
/// `any_key_in_tt`: bit p is set iff trace position p intersects [lo, hi].
/// Throws error{no_intersection} when [lo, hi] misses the Trace-Tree.
std::uint64_t trace_bitmask(const layer_layout& layout, unsigned layer, key_type any_key_in_tt,
                            key_type lo, key_type hi);

/// Renders a trace element position-first: character p is trace position p.
/// This is the reading order of trace diagrams, so the leaf mask for the two
/// rightmost positions prints as "00000011".
std::string format_trace(std::uint64_t element, unsigned trace_size);

}  // namespace bloomrf
