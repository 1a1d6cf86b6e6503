#include "bloomrf/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bloomrf/error.hpp"

namespace bloomrf {

layer_layout build_layout(unsigned width, std::span<const unsigned> heights) {
  if (width != 8 && width != 16 && width != 32 && width != 64) {
    throw error(errc::unsupported_width, "domain width must be 8, 16, 32 or 64, got " + std::to_string(width));
  }
  if (heights.empty()) throw error(errc::sum_mismatch, "empty height vector");

  const auto sum = std::accumulate(heights.begin(), heights.end(), std::uint64_t{0});
  if (sum != width) {
    throw error(errc::sum_mismatch,
                "heights sum to " + std::to_string(sum) + ", domain width is " + std::to_string(width));
  }

  layer_layout out;
  out.width = width;
  out.heights.assign(heights.begin(), heights.end());
  out.bottom_levels.resize(heights.size());
  out.trace_bits.assign(heights.size(), 0);
  out.tt_counts.assign(heights.size(), 0.0);

  unsigned level = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const unsigned h = heights[i];
    if (i > 0) {
      if (h == 0) throw error(errc::zero_height, "layer " + std::to_string(i) + " has height 0");
      if (h - 1 > max_trace_bits) {
        throw error(errc::trace_too_wide,
                    "layer " + std::to_string(i) + " height " + std::to_string(h) + " exceeds a 64-bit trace");
      }
      out.trace_bits[i] = h - 1;
      out.tt_counts[i] = std::ldexp(1.0, static_cast<int>(level) + 1);
      out.tt_max += out.tt_counts[i];
    }
    level += h;
    out.bottom_levels[i] = level;
  }
  return out;
}

dyadic_interval covering_interval(unsigned width, key_type key, unsigned level) {
  if (level > width) {
    throw error(errc::level_out_of_range,
                "level " + std::to_string(level) + " outside [0, " + std::to_string(width) + "]");
  }
  const std::uint64_t span = low_mask(width - level);
  const key_type lo = key & ~span & low_mask(width);
  return {level, lo, lo | span};
}

std::vector<dyadic_interval> dyadic_decompose(unsigned width, key_type lo, key_type hi) {
  std::vector<dyadic_interval> out;
  if (lo > hi) return out;
  for (;;) {
    // Largest aligned block starting at lo that stays within [lo, hi].
    unsigned bits = lo == 0 ? width : std::min<unsigned>(std::countr_zero(lo), width);
    while (bits > 0 && (hi - lo) < low_mask(bits)) --bits;
    const key_type end = lo + low_mask(bits);
    out.push_back({width - bits, lo, end});
    if (end >= hi) break;
    lo = end + 1;
  }
  return out;
}

std::uint64_t trace_bitmask(const layer_layout& layout, unsigned layer, key_type any_key_in_tt,
                            key_type lo, key_type hi) {
  if (layer < 1 || layer > layout.layers()) {
    throw error(errc::layer_out_of_range, "trace masks exist for hashed layers 1.." +
                                              std::to_string(layout.layers()) + ", got " + std::to_string(layer));
  }
  const key_type tt_lo = any_key_in_tt & ~low_mask(layout.tree_shift(layer));
  const key_type tt_hi = tt_lo | low_mask(layout.tree_shift(layer));
  const key_type from = std::max(lo, tt_lo);
  const key_type to = std::min(hi, tt_hi);
  if (lo > hi || from > to) throw error(errc::no_intersection, "query range misses the trace-tree");

  const unsigned shift = layout.position_shift(layer);
  const auto first = static_cast<unsigned>((from - tt_lo) >> shift);
  const auto last = static_cast<unsigned>((to - tt_lo) >> shift);
  return low_mask(last + 1) & ~low_mask(first);
}

std::string format_trace(std::uint64_t element, unsigned trace_size) {
  std::string out(trace_size, '0');
  for (unsigned p = 0; p < trace_size; ++p) {
    if ((element >> p) & 1) out[p] = '1';
  }
  return out;
}

}  // namespace bloomrf
