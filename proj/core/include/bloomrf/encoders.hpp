#pragma once

#include <cstdint>
#include <string_view>

#include "bloomrf/dyadic.hpp"

namespace bloomrf {

/// IEEE-style binary float: sign bit, `exponent_bits`, `mantissa_bits`.
struct float_layout {
  unsigned mantissa_bits = 52;
  unsigned exponent_bits = 11;

  unsigned width() const noexcept { return mantissa_bits + exponent_bits + 1; }
};

inline constexpr float_layout half_layout{10, 5};
inline constexpr float_layout single_layout{23, 8};
inline constexpr float_layout double_layout{52, 11};

/// Order-preserving code of a float bit pattern: positives get the sign bit
/// set, negatives are bit-inverted. For non-NaN x, y: fl(x) < fl(y) implies
/// code(x) < code(y); -0.0 sorts directly below +0.0. NaNs are encoded by the
/// same rule and land outside the numeric band; ranges over them mean nothing.
/// Throws error{unsupported_width} unless the layout is 16, 32 or 64 bits.
std::uint64_t encode_float(std::uint64_t bits, float_layout layout);
std::uint64_t decode_float(std::uint64_t code, float_layout layout);

std::uint64_t encode_double(double value) noexcept;
std::uint64_t encode_single(float value) noexcept;

/// One-byte digest of a string tail and the full string length (FNV-1a over
/// the tail bytes, then the 8 little-endian length bytes, folded to 8 bits).
/// Changing it changes every encoded string key.
std::uint8_t string_suffix_hash(std::string_view tail, std::uint64_t length) noexcept;

/// 64-bit key: bytes 0..6 of `s` (zero-padded) big-endian in the top seven
/// bytes, string_suffix_hash(s[7..], |s|) in the low byte. Orders by the
/// 7-byte prefix only.
std::uint64_t encode_string(std::string_view s) noexcept;

/// Two attributes packed into one key of a_bits + b_bits bits. Each value is
/// `*_width` bits wide on input and keeps its most significant `*_bits` bits.
struct attribute_pair {
  unsigned a_bits = 32;
  unsigned b_bits = 32;
  unsigned a_width = 64;
  unsigned b_width = 64;

  unsigned width() const noexcept { return a_bits + b_bits; }
  std::uint64_t reduce_a(std::uint64_t a) const noexcept;
  std::uint64_t reduce_b(std::uint64_t b) const noexcept;
};

struct pair_keys {
  key_type ab = 0;  // <A,B>: A in the high bits
  key_type ba = 0;  // <B,A>
};

/// Both combinations of a row; insert both into the backing filter.
pair_keys encode_pair(std::uint64_t a, std::uint64_t b, const attribute_pair& pair) noexcept;

/// Closed predicate lo <= value <= hi on one attribute (in its input width).
struct attribute_predicate {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  static attribute_predicate equal(std::uint64_t v) noexcept { return {v, v}; }
  /// value < v; throws error{invalid_range} for v == 0.
  static attribute_predicate less(std::uint64_t v);
  /// value > v within `width` bits; throws error{invalid_range} at the top.
  static attribute_predicate greater(std::uint64_t v, unsigned width);
  static attribute_predicate between(std::uint64_t lo, std::uint64_t hi);

  bool is_point() const noexcept { return lo == hi; }
};

enum class combination { ab, ba };

struct probe_plan {
  combination order = combination::ab;
  key_type lo = 0;
  key_type hi = 0;

  bool point() const noexcept { return lo == hi; }
};

/// Maps `a AND b` onto one contiguous probe. Equality on X with a range on Y
/// probes <X,Y> over X's block; two equalities probe <A,B> at a point. Range
/// endpoints are reduced with the same MSB truncation as inserts, which can
/// only widen the probe. Throws error{two_ranges}.
probe_plan plan_conjunctive(const attribute_predicate& a, const attribute_predicate& b, const attribute_pair& pair);

}  // namespace bloomrf
