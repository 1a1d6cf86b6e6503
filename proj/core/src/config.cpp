#include "bloomrf/config.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bloomrf/error.hpp"

namespace bloomrf {
namespace {

[[noreturn]] void reject(const std::string& why) { throw error(errc::invalid_config, why); }

}  // namespace

std::uint64_t filter_config::total_bits() const noexcept {
  return std::accumulate(segment_bits.begin(), segment_bits.end(), std::uint64_t{0});
}

void validate(const filter_config& config) {
  const auto& layout = config.layout;
  if (layout.heights.empty()) reject("empty layout");
  // Re-derive the layout so hand-edited or deserialized configs cannot smuggle
  // in inconsistent geometry.
  try {
    if (build_layout(layout.width, layout.heights) != layout) reject("layout geometry is inconsistent");
  } catch (const error& e) {
    if (e.code() == errc::invalid_config) throw;
    reject(e.what());
  }

  const unsigned layers = layout.layers();
  if (config.hashes.size() != layers + 1) reject("hash-count vector must have one entry per layer");
  if (config.segment_of.size() != layers + 1) reject("segment vector must have one entry per layer");
  if (config.segment_bits.empty()) reject("no segments");
  if (config.hashes[0] != 0) reject("the exact layer takes no hash functions (hashes[0] must be 0)");

  for (unsigned i = 1; i <= layers; ++i) {
    if (config.hashes[i] < 1 || config.hashes[i] > max_hashes_per_layer) {
      reject("layer " + std::to_string(i) + " needs 1.." + std::to_string(max_hashes_per_layer) + " hashes");
    }
    const unsigned j = config.segment_of[i];
    if (j >= config.segment_bits.size()) reject("layer " + std::to_string(i) + " names a missing segment");
    const std::uint64_t m = config.segment_bits[j];
    if (m == 0 || m % 64 != 0) reject("segment " + std::to_string(j) + " size must be a positive multiple of 64");
    if (m % layout.trace_size(i) != 0) reject("segment " + std::to_string(j) + " is not trace-aligned");
  }

  if (config.has_exact_layer()) {
    const unsigned j = config.segment_of[0];
    if (layout.exact_level() > max_exact_level) reject("exact layer too deep for an in-memory bitmap");
    if (j >= config.segment_bits.size()) reject("exact layer names a missing segment");
    if (config.segment_bits[j] != (std::uint64_t{1} << layout.exact_level())) {
      reject("exact segment must hold exactly 2^" + std::to_string(layout.exact_level()) + " bits");
    }
    for (unsigned i = 1; i <= layers; ++i) {
      if (config.segment_of[i] == j) reject("the exact segment cannot be shared with hashed layers");
    }
  } else if (config.segment_of[0] != 0) {
    reject("segment_of[0] must be 0 without an exact layer");
  }

  if (config.start_layer < 1 || config.start_layer > std::max(layers, 1u)) {
    reject("start layer must lie in [1, " + std::to_string(std::max(layers, 1u)) + "]");
  }
  if (config.early_stop_threshold && *config.early_stop_threshold >= 64) {
    reject("early-stop threshold must be below 64");
  }
}

filter_config make_basic_config(unsigned width, std::vector<unsigned> heights, std::uint64_t total_bits,
                                std::uint64_t seed) {
  filter_config config;
  config.layout = build_layout(width, heights);
  const unsigned layers = config.layout.layers();
  config.hashes.assign(layers + 1, 1);
  config.hashes[0] = 0;
  config.segment_of.assign(layers + 1, 0);
  config.segment_bits = {total_bits};
  config.seed = seed;
  validate(config);
  return config;
}

std::vector<unsigned> uniform_heights(unsigned width, unsigned trace_height) {
  std::vector<unsigned> heights{0};
  if (width % trace_height != 0) heights.push_back(width % trace_height);
  for (unsigned i = 0; i < width / trace_height; ++i) heights.push_back(trace_height);
  return heights;
}

}  // namespace bloomrf
