#include "bloomrf/encoders.hpp"

#include <bit>
#include <string>

#include "bloomrf/error.hpp"

namespace bloomrf {
namespace {

void check_layout(float_layout layout) {
  const unsigned w = layout.width();
  if (w != 16 && w != 32 && w != 64) {
    throw error(errc::unsupported_width, "float layout is " + std::to_string(w) + " bits");
  }
}

std::uint64_t reduce(std::uint64_t v, unsigned width, unsigned bits) noexcept {
  v &= low_mask(width);
  return width > bits ? v >> (width - bits) : v;
}

}  // namespace

std::uint64_t encode_float(std::uint64_t bits, float_layout layout) {
  check_layout(layout);
  const unsigned sign_bit = layout.mantissa_bits + layout.exponent_bits;
  const std::uint64_t all = low_mask(layout.width());
  bits &= all;
  if ((bits >> sign_bit) & 1) return ~bits & all;
  return bits + (std::uint64_t{1} << sign_bit);
}

std::uint64_t decode_float(std::uint64_t code, float_layout layout) {
  check_layout(layout);
  const unsigned sign_bit = layout.mantissa_bits + layout.exponent_bits;
  const std::uint64_t all = low_mask(layout.width());
  code &= all;
  if ((code >> sign_bit) & 1) return code - (std::uint64_t{1} << sign_bit);
  return ~code & all;
}

std::uint64_t encode_double(double value) noexcept {
  return encode_float(std::bit_cast<std::uint64_t>(value), double_layout);
}

std::uint64_t encode_single(float value) noexcept {
  return encode_float(std::bit_cast<std::uint32_t>(value), single_layout);
}

std::uint8_t string_suffix_hash(std::string_view tail, std::uint64_t length) noexcept {
  constexpr std::uint64_t prime = 0x100000001b3ULL;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : tail) {
    h ^= static_cast<unsigned char>(c);
    h *= prime;
  }
  for (int i = 0; i < 8; ++i) {
    h ^= (length >> (8 * i)) & 0xff;
    h *= prime;
  }
  h ^= h >> 32;
  h ^= h >> 16;
  h ^= h >> 8;
  return static_cast<std::uint8_t>(h);
}

std::uint64_t encode_string(std::string_view s) noexcept {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    const std::uint64_t byte = i < s.size() ? static_cast<unsigned char>(s[i]) : 0;
    key |= byte << (8 * (7 - i));
  }
  const auto tail = s.size() > 7 ? s.substr(7) : std::string_view{};
  return key | string_suffix_hash(tail, s.size());
}

std::uint64_t attribute_pair::reduce_a(std::uint64_t a) const noexcept { return reduce(a, a_width, a_bits); }
std::uint64_t attribute_pair::reduce_b(std::uint64_t b) const noexcept { return reduce(b, b_width, b_bits); }

pair_keys encode_pair(std::uint64_t a, std::uint64_t b, const attribute_pair& pair) noexcept {
  const auto ra = pair.reduce_a(a);
  const auto rb = pair.reduce_b(b);
  const auto shift_b = pair.b_bits >= 64 ? 0 : pair.b_bits;
  const auto shift_a = pair.a_bits >= 64 ? 0 : pair.a_bits;
  return {(ra << shift_b) | rb, (rb << shift_a) | ra};
}

attribute_predicate attribute_predicate::less(std::uint64_t v) {
  if (v == 0) throw error(errc::invalid_range, "value < 0 selects nothing");
  return {0, v - 1};
}

attribute_predicate attribute_predicate::greater(std::uint64_t v, unsigned width) {
  if (v >= low_mask(width)) throw error(errc::invalid_range, "value > max selects nothing");
  return {v + 1, low_mask(width)};
}

attribute_predicate attribute_predicate::between(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw error(errc::invalid_range, "empty attribute range");
  return {lo, hi};
}

probe_plan plan_conjunctive(const attribute_predicate& a, const attribute_predicate& b, const attribute_pair& pair) {
  if (a.lo > a.hi || b.lo > b.hi) throw error(errc::invalid_range, "empty attribute predicate");
  if (!a.is_point() && !b.is_point()) {
    throw error(errc::two_ranges, "at most one attribute may carry a range predicate");
  }
  if (a.is_point()) {
    const key_type block = pair.reduce_a(a.lo) << pair.b_bits;
    return {combination::ab, block | pair.reduce_b(b.lo), block | pair.reduce_b(b.hi)};
  }
  const key_type block = pair.reduce_b(b.lo) << pair.a_bits;
  return {combination::ba, block | pair.reduce_a(a.lo), block | pair.reduce_a(a.hi)};
}

}  // namespace bloomrf
