#include "bloomrf/workbench/workload.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "bloomrf/error.hpp"

namespace bloomrf::workbench {

std::string to_string(distribution d) {
  switch (d) {
    case distribution::uniform: return "uniform";
    case distribution::normal: return "normal";
    case distribution::zipfian: return "zipfian";
  }
  return "?";
}

distribution parse_distribution(const std::string& name) {
  if (name == "uniform") return distribution::uniform;
  if (name == "normal") return distribution::normal;
  if (name == "zipfian") return distribution::zipfian;
  throw error(errc::parse_error, "unknown distribution '" + name + "' (uniform|normal|zipfian)");
}

zipfian_generator::zipfian_generator(std::uint64_t items, double theta) : items_(items), theta_(theta) {
  if (items == 0) throw std::invalid_argument("zipfian over zero items");
  if (!(theta > 0)) throw std::invalid_argument("zipfian theta must be positive");
  std::vector<double> weights(items);
  for (std::uint64_t i = 0; i < items; ++i) {
    weights[i] = std::pow(static_cast<double>(i + 1), -theta);
    zeta_ += weights[i];
  }
  ranks_ = std::discrete_distribution<std::uint64_t>(weights.begin(), weights.end());
}

double zipfian_generator::probability(std::uint64_t rank) const {
  return std::pow(static_cast<double>(rank + 1), -theta_) / zeta_;
}

workload generate_workload(const workload_spec& spec, const exact_set* oracle) {
  if (spec.range_size == 0) throw error(errc::invalid_range, "range size must be at least 1");
  if (spec.empty_only && oracle == nullptr) throw error(errc::invalid_config, "empty-only workloads need the key set");
  const key_type max_key = low_mask(spec.width);
  if (spec.range_size - 1 > max_key) throw error(errc::invalid_range, "range size exceeds the domain");
  const key_type last_lo = max_key - (spec.range_size - 1);

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<key_type> uniform(0, last_lo);
  const double domain = std::ldexp(1.0, static_cast<int>(spec.width));
  std::normal_distribution<double> normal(domain / 2, domain / 8);

  const std::uint64_t buckets = last_lo < spec.zipf_buckets ? last_lo + 1 : std::max<std::uint64_t>(spec.zipf_buckets, 1);
  const key_type bucket_span = last_lo / buckets + 1;
  std::optional<zipfian_generator> zipf;
  if (spec.dist == distribution::zipfian) zipf.emplace(buckets, spec.zipf_theta);

  auto draw = [&]() -> key_type {
    switch (spec.dist) {
      case distribution::uniform: return uniform(rng);
      case distribution::normal: {
        const double x = std::clamp(normal(rng), 0.0, static_cast<double>(last_lo));
        return x >= static_cast<double>(last_lo) ? last_lo : static_cast<key_type>(x);
      }
      case distribution::zipfian: {
        const key_type base = (*zipf)(rng) * bucket_span;
        const key_type offset = std::uniform_int_distribution<key_type>(0, bucket_span - 1)(rng);
        return std::min(base + offset, last_lo);
      }
    }
    return 0;
  };

  workload out;
  out.queries.reserve(spec.query_count);
  const std::size_t attempt_limit = 1000 + 100 * spec.query_count;
  std::size_t attempts = 0;
  while (out.queries.size() < spec.query_count) {
    if (++attempts > attempt_limit) {
      throw std::runtime_error("gave up after " + std::to_string(attempt_limit) + " candidates: only " +
                               std::to_string(out.queries.size()) + " empty ranges of size " +
                               std::to_string(spec.range_size) + " found");
    }
    const key_type lo = draw();
    const range_query q{lo, lo + (spec.range_size - 1)};
    if (spec.empty_only && oracle->intersects(q.lo, q.hi)) {
      ++out.rejected;
      continue;
    }
    out.queries.push_back(q);
  }
  return out;
}

std::vector<key_type> uniform_keys(std::size_t count, unsigned width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<key_type> keys(count);
  const key_type mask = low_mask(width);
  for (auto& k : keys) k = rng() & mask;
  return keys;
}

}  // namespace bloomrf::workbench
