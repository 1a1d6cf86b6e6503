#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bloomrf/filter.hpp"

namespace bloomrf {

/// Binary filter image, all integers little-endian:
///
///   "BRF1" | u16 format version | u8 d | u8 L
///   | u8 heights[L+1] | u8 hashes[L+1] | u8 segment_of[L+1]
///   | u8 segment count S | u64 segment_bits[S]
///   | u64 seed | u8 hash-family version | u8 early-stop threshold (0xFF = off)
///   | u8 start layer | u64 key count
///   | segment bytes, ceil(m_j / 8) per segment in order (bit i -> byte i/8, bit i%8)
///   | u32 CRC-32 (zlib polynomial) of everything above
inline constexpr std::uint16_t format_version = 1;
inline constexpr std::uint8_t early_stop_disabled = 0xFF;

std::vector<std::uint8_t> serialize(const filter& f);
/// Header-only image (no segment payload, no checksum) describing `config`.
std::vector<std::uint8_t> serialize_header(const filter_config& config, std::uint64_t key_count = 0);

/// Throws error{bad_magic | version_mismatch | truncated_stream |
/// checksum_mismatch | invalid_config}.
filter deserialize(std::span<const std::uint8_t> bytes);

}  // namespace bloomrf
