#include "bloomrf/hashing.hpp"

#include <string>

#include "bloomrf/error.hpp"

namespace bloomrf {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

hash_constants hash_family::constants(unsigned layer, unsigned replica) const noexcept {
  // Each (layer, replica) cell owns two consecutive splitmix outputs.
  const std::uint64_t cell = (std::uint64_t{layer} << 8 | replica) * 2;
  return {splitmix64(seed_ ^ splitmix64(cell)) | 1, splitmix64(seed_ ^ splitmix64(cell + 1))};
}

layer_addressing::layer_addressing(const filter_config& config, const hash_family& family, unsigned layer)
    : position_shift(config.layout.position_shift(layer)),
      trace_bits(config.layout.trace_bits[layer]),
      segment(config.segment_of[layer]),
      slots(config.segment_bits[config.segment_of[layer]] >> config.layout.trace_bits[layer]) {
  replicas.reserve(config.hashes[layer]);
  for (unsigned r = 0; r < config.hashes[layer]; ++r) replicas.push_back(family.constants(layer, r));
}

bit_position mh(const filter_config& config, unsigned layer, unsigned replica, key_type key) {
  if (layer < 1 || layer > config.layout.layers()) {
    throw error(errc::layer_out_of_range, "no hashed layer " + std::to_string(layer));
  }
  if (replica >= config.hashes[layer]) {
    throw error(errc::replica_out_of_range,
                "layer " + std::to_string(layer) + " has " + std::to_string(config.hashes[layer]) + " replicas");
  }
  const layer_addressing addr(config, hash_family(config.seed), layer);
  return {addr.segment, addr.element_base(replica, addr.selector(key)) + addr.offset(key)};
}

bit_position exact_position(const filter_config& config, key_type key) {
  if (!config.has_exact_layer()) throw error(errc::no_exact_layer, "layout has no exact layer");
  const auto& layout = config.layout;
  return {config.segment_of[0], key >> (layout.width - layout.exact_level())};
}

std::vector<bit_position> positions_for(const filter_config& config, key_type key) {
  std::vector<bit_position> out;
  if (config.has_exact_layer()) out.push_back(exact_position(config, key));
  const hash_family family(config.seed);
  for (unsigned i = config.start_layer; i <= config.layout.layers(); ++i) {
    const layer_addressing addr(config, family, i);
    const auto selector = addr.selector(key);
    for (unsigned r = 0; r < config.hashes[i]; ++r) {
      out.push_back({addr.segment, addr.element_base(r, selector) + addr.offset(key)});
    }
  }
  return out;
}

}  // namespace bloomrf
