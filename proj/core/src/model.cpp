#include "bloomrf/model.hpp"

#include <algorithm>
#include <cmath>

namespace bloomrf {
namespace {

double pow2(unsigned e) { return std::ldexp(1.0, static_cast<int>(e)); }

double true_positives(double keys, unsigned level) { return std::min(keys, pow2(level)); }

// Expected number of distinct level-`level` intervals hit by `keys` uniform
// keys: 2^l * (1 - (1 - 2^-l)^n). Tends to min(n, 2^l) away from 2^l ~ n.
double occupied_intervals(double keys, unsigned level) {
  const double cells = pow2(level);
  if (keys <= 0) return 0.0;
  if (level >= 63) return keys;  // 2^-l below double resolution of log1p's argument
  return -cells * std::expm1(keys * std::log1p(-1.0 / cells));
}

double pass_rate(const filter_config& config, double keys, unsigned layer) {
  if (!config.probed(layer)) return 1.0;
  const double beta = estimate_fill_rate(config, keys, config.segment_of[layer]);
  return std::pow(beta, static_cast<double>(config.hashes[layer]));
}

}  // namespace

double estimate_fill_rate(const filter_config& config, double keys, std::size_t segment) {
  if (config.has_exact_layer() && config.segment_of[0] == segment) return 0.0;
  const auto& layout = config.layout;
  double writes = 0;
  for (unsigned i = config.start_layer; i <= layout.layers(); ++i) {
    if (config.segment_of[i] == segment) writes += config.hashes[i] * occupied_intervals(keys, layout.bottom_levels[i]);
  }
  const double m = static_cast<double>(config.segment_bits.at(segment));
  return -std::expm1(writes * std::log1p(-1.0 / m));
}

std::vector<layer_stats> estimate_layer_stats(const filter_config& config, double keys) {
  const auto& layout = config.layout;
  std::vector<layer_stats> out(layout.layers() + 1);

  auto& top = out[0];
  top.level = layout.bottom_levels[0];
  top.tp = true_positives(keys, top.level);
  top.fp = 0;
  top.tn = pow2(top.level) - top.tp;
  top.beta = 0;
  top.pass_rate = 0;
  top.fpr = 0;

  for (unsigned i = 0; i < layout.layers(); ++i) {
    auto& cur = out[i];
    auto& next = out[i + 1];
    const double fanout = pow2(layout.heights[i + 1]);
    next.level = layout.bottom_levels[i + 1];
    next.tp = true_positives(keys, next.level);
    next.beta = estimate_fill_rate(config, keys, config.segment_of[i + 1]);
    next.pass_rate = pass_rate(config, keys, i + 1);

    cur.fp_pot = std::max(0.0, fanout * (cur.fp + cur.tp) - next.tp);
    next.fp = next.pass_rate * cur.fp_pot;
    next.tn = fanout * cur.tn + (1.0 - next.pass_rate) * cur.fp_pot;
    next.fpr = next.fp + next.tn > 0 ? next.fp / (next.fp + next.tn) : 0.0;
  }
  return out;
}

double estimate_point_fpr(const filter_config& config, double keys) {
  const auto& layout = config.layout;
  const unsigned leaf = layout.layers();
  if (leaf == 0 || keys <= 0) return 0.0;

  // occupied[i]: chance that an absent key's level-l_i interval holds a key.
  std::vector<double> occupied(leaf + 1, 0.0);
  for (unsigned i = 0; i < leaf; ++i) {
    occupied[i] = true_positives(keys, layout.bottom_levels[i]) / pow2(layout.bottom_levels[i]);
  }

  double fpr = 0;
  double below = 1.0;  // product of pass rates of layers i+1..L
  for (unsigned i = leaf; i-- > 0;) {
    below *= pass_rate(config, keys, i + 1);
    fpr += (occupied[i] - occupied[i + 1]) * below;
  }
  return std::clamp(fpr, 0.0, 1.0);
}

std::vector<double> estimate_level_fprs(const filter_config& config, double keys) {
  const auto& layout = config.layout;
  const auto stats = estimate_layer_stats(config, keys);
  std::vector<double> out(layout.width + 1, 0.0);
  for (unsigned i = 1; i <= layout.layers(); ++i) {
    const double pass = stats[i].pass_rate;
    const double ancestors = pass > 0 ? std::min(1.0, stats[i].fpr / pass) : 0.0;
    for (unsigned level = layout.bottom_levels[i - 1] + 1; level <= layout.bottom_levels[i]; ++level) {
      const double width = pow2(layout.bottom_levels[i] - level);
      out[level] = pass >= 1.0 ? ancestors : ancestors * (1.0 - std::pow(1.0 - pass, width));
    }
  }
  out[layout.width] = estimate_point_fpr(config, keys);
  return out;
}

double estimate_range_fpr(const filter_config& config, double keys, std::uint64_t range_size, unsigned samples) {
  const auto& layout = config.layout;
  if (range_size <= 1) return estimate_point_fpr(config, keys);
  const auto levels = estimate_level_fprs(config, keys);
  const std::uint64_t span = range_size - 1;
  if (span >= layout.max_key()) return levels[0];
  const std::uint64_t positions = layout.max_key() - span;

  std::uint64_t state = 0x243f6a8885a308d3ULL;
  double total = 0;
  for (unsigned s = 0; s < samples; ++s) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    const key_type lo = z % (positions + 1);
    double miss = 1.0;
    for (const auto& piece : dyadic_decompose(layout.width, lo, lo + span)) miss *= 1.0 - levels[piece.level];
    total += 1.0 - miss;
  }
  return total / samples;
}

unsigned choose_start_layer(const layer_layout& layout, double keys, double cutoff) {
  for (unsigned i = 1; i <= layout.layers(); ++i) {
    if (true_positives(keys, layout.bottom_levels[i]) / pow2(layout.bottom_levels[i]) <= cutoff) return i;
  }
  return std::max(layout.layers(), 1u);
}

}  // namespace bloomrf
