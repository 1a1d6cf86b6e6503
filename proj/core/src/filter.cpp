#include "bloomrf/filter.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "bloomrf/error.hpp"

namespace bloomrf {

std::size_t lookup_trace::fetches(unsigned layer) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(probes.begin(), probes.end(), [layer](const probe_record& p) { return p.layer == layer; }));
}

filter::filter(filter_config config) : config_(std::move(config)) {
  validate(config_);
  segments_.reserve(config_.segment_bits.size());
  for (const auto bits : config_.segment_bits) segments_.emplace_back(bits);

  const hash_family family(config_.seed);
  layers_.resize(config_.layout.layers() + 1);
  for (unsigned i = 1; i <= config_.layout.layers(); ++i) layers_[i] = layer_addressing(config_, family, i);
}

filter::filter(const filter& other)
    : config_(other.config_), segments_(other.segments_), layers_(other.layers_), key_count_(other.key_count()) {}

filter& filter::operator=(const filter& other) {
  if (this != &other) {
    config_ = other.config_;
    segments_ = other.segments_;
    layers_ = other.layers_;
    key_count_.store(other.key_count(), std::memory_order_release);
  }
  return *this;
}

filter::filter(filter&& other) noexcept
    : config_(std::move(other.config_)),
      segments_(std::move(other.segments_)),
      layers_(std::move(other.layers_)),
      key_count_(other.key_count()) {}

filter& filter::operator=(filter&& other) noexcept {
  config_ = std::move(other.config_);
  segments_ = std::move(other.segments_);
  layers_ = std::move(other.layers_);
  key_count_.store(other.key_count(), std::memory_order_release);
  return *this;
}

void filter::check_key(key_type key) const {
  if (key > config_.layout.max_key()) {
    throw error(errc::key_out_of_domain,
                "key " + std::to_string(key) + " exceeds a " + std::to_string(config_.layout.width) + "-bit domain");
  }
}

void filter::insert(key_type key) {
  check_key(key);
  const auto& layout = config_.layout;
  if (layout.has_exact_layer()) {
    segments_[config_.segment_of[0]].set(key >> (layout.width - layout.exact_level()));
  }
  for (unsigned i = config_.start_layer; i <= layout.layers(); ++i) {
    const auto& addr = layers_[i];
    auto& segment = segments_[addr.segment];
    const auto selector = addr.selector(key);
    const auto offset = addr.offset(key);
    for (unsigned r = 0; r < addr.replicas.size(); ++r) segment.set(addr.element_base(r, selector) + offset);
  }
  key_count_.fetch_add(1, std::memory_order_acq_rel);
}

bool filter::point_lookup(key_type key) const {
  check_key(key);
  const auto& layout = config_.layout;
  if (layout.has_exact_layer() &&
      !segments_[config_.segment_of[0]].test(key >> (layout.width - layout.exact_level()))) {
    return false;
  }
  // Leaf first: lower layers are sparser and reject absent keys sooner.
  for (unsigned i = layout.layers(); i >= config_.start_layer && i >= 1; --i) {
    const auto& addr = layers_[i];
    const auto& segment = segments_[addr.segment];
    const auto selector = addr.selector(key);
    const auto offset = addr.offset(key);
    for (unsigned r = 0; r < addr.replicas.size(); ++r) {
      if (!segment.test(addr.element_base(r, selector) + offset)) return false;
    }
  }
  return true;
}

std::uint64_t filter::fetch_element(unsigned layer, key_type key) const noexcept {
  const auto& addr = layers_[layer];
  const auto& segment = segments_[addr.segment];
  const unsigned trace_size = 1u << addr.trace_bits;
  const auto selector = addr.selector(key);
  std::uint64_t element = low_mask(trace_size);
  for (unsigned r = 0; r < addr.replicas.size() && element != 0; ++r) {
    element &= segment.extract(addr.element_base(r, selector), trace_size);
  }
  return element;
}

bool filter::range_lookup(key_type lo, key_type hi, lookup_trace* trace) const {
  if (lo > hi) {
    throw error(errc::invalid_range, "[" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
  }
  check_key(hi);
  const auto& layout = config_.layout;
  const unsigned leaf = layout.layers();

  // Pending work: every layer-`layer` Trace-Tree intersecting [lo, hi],
  // consumed one tree at a time so that large seeds stay lazy.
  struct pending {
    unsigned layer;
    key_type lo;
    key_type hi;
  };
  std::vector<pending> stack;
  stack.reserve(64);

  if (layout.has_exact_layer()) {
    const auto& exact = segments_[config_.segment_of[0]];
    const unsigned shift = layout.width - layout.exact_level();
    const std::uint64_t unit = low_mask(shift);
    const std::uint64_t first = lo >> shift;
    const std::uint64_t last = hi >> shift;

    auto covered = [&](std::uint64_t index) {
      const key_type unit_lo = index << shift;
      return unit_lo >= lo && (unit_lo | unit) <= hi;
    };
    const bool first_covered = covered(first);
    const bool last_covered = covered(last);

    // Exact intervals fully inside the query answer it without error.
    if (last_covered || last > first) {
      const std::uint64_t from = first_covered ? first : first + 1;
      const std::uint64_t to = last_covered ? last : last - 1;
      if (from <= to && exact.any(from, to)) return true;
    }

    // Partially covered boundary intervals descend into the hashed layers.
    auto descend = [&](std::uint64_t index) {
      const bool occupied = exact.test(index);
      if (trace) trace->probes.push_back({0, index << shift, 1, occupied ? 1u : 0u});
      if (!occupied) return false;
      if (leaf == 0) return true;
      stack.push_back({config_.start_layer, std::max(lo, index << shift), std::min(hi, (index << shift) | unit)});
      return false;
    };
    // Highest first, so the stack pops ascending keys.
    if (last != first && !last_covered && descend(last)) return true;
    if (!first_covered && descend(first)) return true;
  } else {
    stack.push_back({config_.start_layer, lo, hi});
  }

  const auto threshold = config_.early_stop_threshold;
  while (!stack.empty()) {
    const pending cur = stack.back();
    stack.pop_back();
    const unsigned layer = cur.layer;

    const key_type tree_lo = cur.lo & ~low_mask(layout.tree_shift(layer));
    const key_type tree_hi = tree_lo | low_mask(layout.tree_shift(layer));
    if (tree_hi < cur.hi) stack.push_back({layer, tree_hi + 1, cur.hi});
    const key_type part_hi = std::min(tree_hi, cur.hi);

    const unsigned shift = layout.position_shift(layer);
    const auto first = static_cast<unsigned>((cur.lo - tree_lo) >> shift);
    const auto last = static_cast<unsigned>((part_hi - tree_lo) >> shift);
    const std::uint64_t mask = low_mask(last + 1) & ~low_mask(first);
    const std::uint64_t element = fetch_element(layer, cur.lo);
    if (trace) trace->probes.push_back({layer, tree_lo, mask, element});

    std::uint64_t hits = element & mask;
    if (hits == 0) continue;
    if (threshold && static_cast<unsigned>(std::popcount(hits)) > *threshold) return true;
    if (layer == leaf) return true;

    // Each run of adjacent surviving positions is one contiguous key range;
    // queue them highest first so the lowest is examined next.
    while (hits != 0) {
      const unsigned run_hi = 63 - static_cast<unsigned>(std::countl_zero(hits));
      const std::uint64_t below = ~hits & low_mask(run_hi);
      const unsigned run_lo = below == 0 ? 0 : 64 - static_cast<unsigned>(std::countl_zero(below));
      const key_type range_lo = tree_lo + (std::uint64_t{run_lo} << shift);
      const key_type range_hi = (tree_lo + (std::uint64_t{run_hi} << shift)) | low_mask(shift);
      stack.push_back({layer + 1, std::max(range_lo, cur.lo), std::min(range_hi, part_hi)});
      hits &= low_mask(run_lo);
    }
  }
  return false;
}

occupancy_report filter::occupancy() const {
  occupancy_report out;
  for (const auto& segment : segments_) {
    out.segment_fill.push_back(static_cast<double>(segment.popcount()) / static_cast<double>(segment.size()));
  }

  const auto& layout = config_.layout;
  out.mean_element_bits.assign(layout.layers() + 1, 0.0);
  out.mean_occupied_element_bits.assign(layout.layers() + 1, 0.0);
  if (layout.has_exact_layer()) {
    const double fill = out.segment_fill[config_.segment_of[0]];
    out.mean_element_bits[0] = fill;
    out.mean_occupied_element_bits[0] = fill > 0 ? 1.0 : 0.0;
  }
  for (unsigned i = 1; i <= layout.layers(); ++i) {
    const auto& segment = segments_[config_.segment_of[i]];
    const unsigned size = layout.trace_size(i);
    const std::uint64_t elements = segment.size() / size;
    std::uint64_t set_bits = 0;
    std::uint64_t occupied = 0;
    for (std::uint64_t e = 0; e < elements; ++e) {
      const auto bits = static_cast<unsigned>(std::popcount(segment.extract(e * size, size)));
      set_bits += bits;
      occupied += bits > 0;
    }
    out.mean_element_bits[i] = static_cast<double>(set_bits) / static_cast<double>(elements);
    out.mean_occupied_element_bits[i] =
        occupied == 0 ? 0.0 : static_cast<double>(set_bits) / static_cast<double>(occupied);
  }
  return out;
}

}  // namespace bloomrf
