#pragma once

#include <cstdint>
#include <vector>

#include "bloomrf/config.hpp"

namespace bloomrf {

struct advisor_input {
  double keys = 0;                  // expected key count n
  std::uint64_t bits = 0;           // total memory budget m
  unsigned range_hint = 16;         // log2 of the largest expected query range
  double point_weight = 4.0;        // C > 1, weight of the point FPR
  unsigned width = 64;              // key domain width d
  std::uint64_t seed = default_seed;
};

struct advisor_result {
  filter_config config;
  double fpr_m = 0;  // worst FPR over the dyadic levels a hinted range can touch
  double fpr_p = 0;  // point FPR
  double fpr_w = 0;  // sqrt(fpr_m^2 + C^2 fpr_p^2)
  bool basic = false;
  std::vector<double> level_fprs;  // model curve, index = level
};

/// Height vector with exact level `exact_level` followed by the (2, 2, 4)
/// mid layers and 7-level lower layers; the last layer takes the remainder.
/// Empty if the template does not fit into `width`.
std::vector<unsigned> exact_layer_template(unsigned width, unsigned exact_level);

/// Three-segment configuration: exact, middle (layers 1-3) and lower layers.
filter_config make_segmented_config(unsigned width, unsigned exact_level, std::uint64_t middle_bits,
                                    std::uint64_t lower_bits, std::uint64_t seed = default_seed);

/// Scores a configuration the way the advisor ranks candidates.
advisor_result evaluate_config(const filter_config& config, const advisor_input& input);

/// Picks a configuration for `input`. Budgets below 16 bits/key get basic
/// bloomRF (uniform traces, one shared segment); larger budgets try every
/// exact level using at most 60% of memory, scan the middle-segment size for
/// each and keep the lowest fpr_w. Throws error{budget_too_small} below 8
/// bits/key.
advisor_result advise(const advisor_input& input);

}  // namespace bloomrf
