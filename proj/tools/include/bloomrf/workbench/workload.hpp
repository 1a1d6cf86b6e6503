#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bloomrf/dyadic.hpp"
#include "bloomrf/exact_set.hpp"

namespace bloomrf::workbench {

enum class distribution { uniform, normal, zipfian };

std::string to_string(distribution d);
distribution parse_distribution(const std::string& name);

/// Query stream with a single fixed range size. Lower bounds follow `dist`
/// over [0, 2^width - range_size]; normal has its mean at the domain centre
/// and sigma = 2^width / 8, clamped. Zipfian draws a rank over
/// `zipf_buckets` equal slices of the domain (rank 0 = lowest slice) and a
/// uniform offset inside the slice.
struct workload_spec {
  distribution dist = distribution::uniform;
  std::size_t query_count = 100000;
  std::uint64_t range_size = 1;
  bool empty_only = true;
  std::uint64_t seed = 1;
  double zipf_theta = 0.99;
  std::uint64_t zipf_buckets = std::uint64_t{1} << 20;
  unsigned width = 64;
};

struct range_query {
  key_type lo = 0;
  key_type hi = 0;
};

struct workload {
  std::vector<range_query> queries;
  std::size_t rejected = 0;  // candidates dropped because they held a key
};

/// Zipfian ranks in [0, items): P(rank r) = (r + 1)^-theta / zeta(items, theta).
/// Sampled exactly from the rank table, so keep `items` in the millions.
class zipfian_generator {
 public:
  zipfian_generator(std::uint64_t items, double theta);

  std::uint64_t operator()(std::mt19937_64& rng) { return ranks_(rng); }
  double probability(std::uint64_t rank) const;
  std::uint64_t items() const noexcept { return items_; }
  double theta() const noexcept { return theta_; }

 private:
  std::uint64_t items_;
  double theta_;
  double zeta_ = 0;
  std::discrete_distribution<std::uint64_t> ranks_;
};

/// With spec.empty_only, candidates intersecting `oracle` are redrawn; the
/// oracle is then mandatory. Throws std::runtime_error if empty ranges are
/// too rare to fill the workload.
workload generate_workload(const workload_spec& spec, const exact_set* oracle);

/// `count` keys uniform over the width-bit domain (duplicates possible).
std::vector<key_type> uniform_keys(std::size_t count, unsigned width, std::uint64_t seed);

}  // namespace bloomrf::workbench
