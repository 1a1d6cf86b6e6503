#include "bloomrf/serialize.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "bloomrf/error.hpp"

namespace bloomrf {
namespace {

constexpr char magic[4] = {'B', 'R', 'F', '1'};

class writer {
 public:
  explicit writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(unsigned v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }

 private:
  void le(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t>& out_;
};

class reader {
 public:
  explicit reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  std::span<const std::uint8_t> bytes(std::uint64_t n) {
    need(n);
    auto out = in_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return out;
  }
  std::size_t position() const noexcept { return pos_; }

 private:
  void need(std::uint64_t n) const {
    if (n > in_.size() - pos_) {
      throw error(errc::truncated_stream, "stream ends at byte " + std::to_string(in_.size()) + ", needed " +
                                              std::to_string(pos_ + n));
    }
  }
  std::uint64_t le(int bytes) {
    need(static_cast<std::uint64_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large images in chunks.
  constexpr std::size_t chunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += chunk) {
    const auto len = std::min(chunk, bytes.size() - off);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(crc);
}

std::uint64_t payload_bytes(std::uint64_t bits) { return (bits + 7) / 8; }

}  // namespace

std::vector<std::uint8_t> serialize_header(const filter_config& config, std::uint64_t key_count) {
  std::vector<std::uint8_t> out;
  writer w(out);
  out.insert(out.end(), std::begin(magic), std::end(magic));
  w.u16(format_version);
  const auto& layout = config.layout;
  w.u8(layout.width);
  w.u8(layout.layers());
  for (auto h : layout.heights) w.u8(h);
  for (auto k : config.hashes) w.u8(k);
  for (auto j : config.segment_of) w.u8(j);
  w.u8(static_cast<unsigned>(config.segment_bits.size()));
  for (auto m : config.segment_bits) w.u64(m);
  w.u64(config.seed);
  w.u8(hash_family::version);
  w.u8(config.early_stop_threshold ? *config.early_stop_threshold : early_stop_disabled);
  w.u8(config.start_layer);
  w.u64(key_count);
  return out;
}

std::vector<std::uint8_t> serialize(const filter& f) {
  auto out = serialize_header(f.config(), f.key_count());
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto& segment = f.segment(j);
    const auto bytes = payload_bytes(segment.size());
    const auto base = out.size();
    out.resize(base + bytes);
    for (std::uint64_t b = 0; b < bytes; ++b) {
      out[base + b] = static_cast<std::uint8_t>(segment.word(b / 8) >> (8 * (b % 8)));
    }
  }
  writer(out).u32(crc32_of(out));
  return out;
}

filter deserialize(std::span<const std::uint8_t> bytes) {
  reader in(bytes);
  const auto head = in.bytes(4);
  if (std::memcmp(head.data(), magic, 4) != 0) throw error(errc::bad_magic, "not a bloomRF image");
  const auto version = in.u16();
  if (version != format_version) {
    throw error(errc::version_mismatch,
                "format version " + std::to_string(version) + ", expected " + std::to_string(format_version));
  }

  const unsigned width = in.u8();
  const unsigned layers = in.u8();
  std::vector<unsigned> heights(layers + 1);
  std::vector<unsigned> hashes(layers + 1);
  std::vector<unsigned> segment_of(layers + 1);
  for (auto& h : heights) h = in.u8();
  for (auto& k : hashes) k = in.u8();
  for (auto& j : segment_of) j = in.u8();
  std::vector<std::uint64_t> segment_bits(in.u8());
  for (auto& m : segment_bits) m = in.u64();
  const auto seed = in.u64();
  const auto hash_version = in.u8();
  if (hash_version != hash_family::version) {
    throw error(errc::version_mismatch, "hash-family version " + std::to_string(hash_version) + ", expected " +
                                            std::to_string(hash_family::version));
  }
  const auto threshold = in.u8();
  const auto start_layer = in.u8();
  const auto key_count = in.u64();

  std::uint64_t payload = 0;
  for (auto m : segment_bits) {
    payload += payload_bytes(m);
    if (payload > bytes.size()) throw error(errc::truncated_stream, "segment sizes exceed the stream");
  }
  const auto body = in.bytes(payload);
  const auto covered = in.position();
  const auto stored_crc = in.u32();
  if (crc32_of(bytes.first(covered)) != stored_crc) throw error(errc::checksum_mismatch, "CRC-32 does not match");

  filter_config config;
  try {
    config.layout = build_layout(width, heights);
  } catch (const error& e) {
    throw error(errc::invalid_config, e.what());
  }
  config.hashes = std::move(hashes);
  config.segment_of = std::move(segment_of);
  config.segment_bits = std::move(segment_bits);
  config.seed = seed;
  config.start_layer = start_layer;
  if (threshold == early_stop_disabled) {
    config.early_stop_threshold.reset();
  } else {
    config.early_stop_threshold = threshold;
  }

  filter out(std::move(config));
  std::size_t off = 0;
  for (std::size_t j = 0; j < out.segment_count(); ++j) {
    auto& segment = out.segment(j);
    const auto n = payload_bytes(segment.size());
    for (std::size_t w = 0; w < segment.word_count(); ++w) {
      std::uint64_t value = 0;
      for (std::size_t b = 0; b < 8 && w * 8 + b < n; ++b) value |= std::uint64_t{body[off + w * 8 + b]} << (8 * b);
      segment.store_word(w, value);
    }
    off += static_cast<std::size_t>(n);
  }
  out.set_key_count(key_count);
  return out;
}

}  // namespace bloomrf
