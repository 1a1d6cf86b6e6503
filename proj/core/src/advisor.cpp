#include "bloomrf/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bloomrf/error.hpp"
#include "bloomrf/model.hpp"

namespace bloomrf {
namespace {

constexpr double exact_share_limit = 0.6;
constexpr double segmented_min_bits_per_key = 16.0;
constexpr unsigned middle_scan_steps = 64;
constexpr unsigned min_exact_level = 6;

std::uint64_t round_down_64(double bits) {
  return bits < 64 ? 0 : static_cast<std::uint64_t>(bits) / 64 * 64;
}

bool better(const advisor_result& a, const advisor_result& b) { return a.fpr_w < b.fpr_w; }

advisor_result best_basic(const advisor_input& input) {
  advisor_result best;
  bool have = false;
  for (unsigned h = 3; h <= 7; ++h) {
    auto config = make_basic_config(input.width, uniform_heights(input.width, h), round_down_64(input.bits),
                                    input.seed);
    config.start_layer = choose_start_layer(config.layout, input.keys);
    auto scored = evaluate_config(config, input);
    if (!have || better(scored, best)) {
      best = std::move(scored);
      have = true;
    }
  }
  best.basic = true;
  return best;
}

}  // namespace

std::vector<unsigned> exact_layer_template(unsigned width, unsigned exact_level) {
  if (exact_level + 8 >= width) return {};
  std::vector<unsigned> heights{exact_level, 2, 2, 4};
  unsigned rest = width - exact_level - 8;
  while (rest >= 7) {
    heights.push_back(7);
    rest -= 7;
  }
  if (rest > 0) heights.push_back(rest);
  return heights;
}

filter_config make_segmented_config(unsigned width, unsigned exact_level, std::uint64_t middle_bits,
                                    std::uint64_t lower_bits, std::uint64_t seed) {
  const auto heights = exact_layer_template(width, exact_level);
  if (heights.empty()) {
    throw error(errc::invalid_config, "exact level " + std::to_string(exact_level) + " leaves no room for the template");
  }
  filter_config config;
  config.layout = build_layout(width, heights);
  const unsigned layers = config.layout.layers();
  config.hashes.assign(layers + 1, 1);
  config.hashes[0] = 0;
  config.hashes[1] = 2;
  config.segment_of.assign(layers + 1, 2);
  config.segment_of[0] = 0;
  config.segment_of[1] = config.segment_of[2] = config.segment_of[3] = 1;
  config.segment_bits = {std::uint64_t{1} << exact_level, middle_bits, lower_bits};
  config.seed = seed;
  validate(config);
  return config;
}

advisor_result evaluate_config(const filter_config& config, const advisor_input& input) {
  advisor_result out;
  out.config = config;
  out.level_fprs = estimate_level_fprs(config, input.keys);
  out.fpr_p = out.level_fprs.back();
  const unsigned width = config.layout.width;
  const unsigned from = input.range_hint >= width ? 0 : width - input.range_hint;
  for (unsigned level = from; level <= width; ++level) out.fpr_m = std::max(out.fpr_m, out.level_fprs[level]);
  out.fpr_w = std::sqrt(out.fpr_m * out.fpr_m + input.point_weight * input.point_weight * out.fpr_p * out.fpr_p);
  return out;
}

advisor_result advise(const advisor_input& input) {
  const double floor_bits = std::max(64.0, 8.0 * input.keys);
  if (static_cast<double>(input.bits) < floor_bits) {
    throw error(errc::budget_too_small, std::to_string(input.bits) + " bits for " +
                                            std::to_string(static_cast<std::uint64_t>(input.keys)) +
                                            " keys; need at least 8 bits/key");
  }

  const auto basic = best_basic(input);
  if (input.keys > 0 && static_cast<double>(input.bits) / input.keys < segmented_min_bits_per_key) return basic;

  advisor_result best;
  bool have = false;
  const double budget = static_cast<double>(input.bits);
  for (unsigned exact = min_exact_level; exact <= std::min(input.width, max_exact_level); ++exact) {
    const double exact_bits = std::ldexp(1.0, static_cast<int>(exact));
    if (exact_bits > exact_share_limit * budget) break;
    if (exact_layer_template(input.width, exact).empty()) break;
    const double rest = budget - exact_bits;
    for (unsigned step = 1; step < middle_scan_steps; ++step) {
      const auto middle = round_down_64(rest * step / middle_scan_steps);
      const auto lower = round_down_64(rest - static_cast<double>(middle));
      if (middle == 0 || lower == 0) continue;
      auto config = make_segmented_config(input.width, exact, middle, lower, input.seed);
      config.start_layer = choose_start_layer(config.layout, input.keys);
      auto scored = evaluate_config(config, input);
      if (!have || better(scored, best)) {
        best = std::move(scored);
        have = true;
      }
    }
  }
  return have ? best : basic;
}

}  // namespace bloomrf
