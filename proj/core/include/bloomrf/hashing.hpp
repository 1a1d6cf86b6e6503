#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "bloomrf/config.hpp"

namespace bloomrf {

/// Address of one bit: segment index and bit index inside that segment.
struct bit_position {
  std::size_t segment = 0;
  std::uint64_t bit = 0;

  auto operator<=>(const bit_position&) const = default;
};

struct hash_constants {
  std::uint64_t multiplier = 0;  // always odd
  std::uint64_t addend = 0;
};

/// Multiply-add hash family H_{i,r}(x) = mult_{i,r} * x + add_{i,r}, evaluated
/// in 128 bits and folded (high ^ low) so that the reduction modulo the slot
/// count sees every selector bit.
///
/// The constants are a pure function of (seed, layer, replica); bump `version`
/// whenever that derivation changes, since serialized filters depend on it.
class hash_family {
 public:
  static constexpr std::uint8_t version = 1;

  explicit hash_family(std::uint64_t seed = default_seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  hash_constants constants(unsigned layer, unsigned replica) const noexcept;

  static std::uint64_t apply(hash_constants c, std::uint64_t selector) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 t = static_cast<u128>(c.multiplier) * selector + c.addend;
    return static_cast<std::uint64_t>(t) ^ static_cast<std::uint64_t>(t >> 64);
  }

 private:
  std::uint64_t seed_;
};

/// Precomputed addressing for one hashed layer; the filter keeps one per layer.
struct layer_addressing {
  unsigned position_shift = 0;  // s_i = d - l_i
  unsigned trace_bits = 0;      // b_i
  std::size_t segment = 0;
  std::uint64_t slots = 0;      // m_j >> b_i
  std::vector<hash_constants> replicas;

  layer_addressing() = default;
  layer_addressing(const filter_config& config, const hash_family& family, unsigned layer);

  std::uint64_t selector(key_type key) const noexcept { return (key >> position_shift) >> trace_bits; }
  std::uint64_t offset(key_type key) const noexcept { return (key >> position_shift) & low_mask(trace_bits); }
  /// First bit of the trace element written by `replica` for `selector`.
  std::uint64_t element_base(unsigned replica, std::uint64_t selector) const noexcept {
    return (hash_family::apply(replicas[replica], selector) % slots) << trace_bits;
  }
};

/// Piecewise-monotone hash MH_{i,r}: position of `key`'s trace bit on hashed
/// layer `layer` for replica `replica`.
/// Throws error{layer_out_of_range | replica_out_of_range}.
bit_position mh(const filter_config& config, unsigned layer, unsigned replica, key_type key);

/// Bit of the exact layer covering `key`. Throws error{no_exact_layer}.
bit_position exact_position(const filter_config& config, key_type key);

/// Every bit an insert of `key` sets: the exact bit (if any) followed by
/// mh(i, r, key) for each written layer i and replica r.
std::vector<bit_position> positions_for(const filter_config& config, key_type key);

}  // namespace bloomrf
