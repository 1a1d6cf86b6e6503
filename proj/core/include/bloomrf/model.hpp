#pragma once

#include <cstdint>
#include <vector>

#include "bloomrf/config.hpp"

namespace bloomrf {

/// Model estimates for the dyadic intervals on the bottom level of one layer,
/// assuming uniformly distributed keys.
struct layer_stats {
  unsigned level = 0;
  double tp = 0;         // intervals holding a key
  double fp = 0;         // empty intervals the filter reports as non-empty
  double tn = 0;         // empty intervals the filter rejects
  double fp_pot = 0;     // candidates for false positives one layer down (0 on the leaf)
  double beta = 0;       // fill rate of this layer's segment
  double pass_rate = 0;  // chance an unbacked probe of this layer passes: beta^k, 1 if skipped
  double fpr = 0;        // fp / (fp + tn)
};

/// Fill rate of segment `segment` after `keys` uniform inserts:
/// 1 - (1 - 1/m)^S, S = sum of k_i * E[occupied level-l_i intervals] over the
/// written layers in the segment. The expectation 2^l (1 - (1 - 2^-l)^n) is
/// min(n, 2^l) except near 2^l ~ n, where min() overcounts repeated
/// intervals. The exact segment reports 0: it never sets a bit for an empty
/// interval.
double estimate_fill_rate(const filter_config& config, double keys, std::size_t segment);

/// Layer-by-layer recursion over tp/fp/tn, one entry per layer 0..L.
std::vector<layer_stats> estimate_layer_stats(const filter_config& config, double keys);

/// False-positive rate of a point query for an absent key.
///
/// Sums over the deepest truly occupied ancestor layer: below it every probed
/// layer must pass by accident. When the hashed layers are sparse this is
/// P(exact interval occupied) * prod beta_j^k_j.
double estimate_point_fpr(const filter_config& config, double keys);

/// Approximate FPR of an empty dyadic interval for every level 0..d.
/// Levels strictly inside a layer are interpolated: a level-l interval in
/// layer i covers w = 2^(l_i - l) trace positions and passes if any of them
/// does, so fpr(l) = rho_i * (1 - (1 - pass_i)^w) with rho_i = fpr_i / pass_i.
/// Entry d is the point FPR.
std::vector<double> estimate_level_fprs(const filter_config& config, double keys);

/// Approximate FPR of an empty range of `range_size` keys: averages
/// 1 - prod(1 - fpr(level)) over the dyadic decompositions of `samples`
/// pseudo-random placements.
double estimate_range_fpr(const filter_config& config, double keys, std::uint64_t range_size,
                          unsigned samples = 64);

/// Topmost hashed layer whose bottom level is not saturated, i.e. where at
/// most `cutoff` of the level-l_i intervals are expected to hold a key.
unsigned choose_start_layer(const layer_layout& layout, double keys, double cutoff = 0.9);

}  // namespace bloomrf
