#pragma once

#include <optional>
#include <span>
#include <string>

#include "bloomrf/filter.hpp"
#include "bloomrf/workbench/workload.hpp"

namespace bloomrf::workbench {

struct thread_split {
  unsigned writers = 1;
  unsigned readers = 1;
};

/// "W:R", both at least 1.
thread_split parse_threads(const std::string& text);

struct latency_stats {
  double mean_ns = 0;
  double median_ns = 0;
  double p99_ns = 0;
};

latency_stats summarize_latencies(std::vector<double> samples_ns);

struct bench_options {
  workload_spec workload;
  thread_split threads;
  bool baseline = true;  // classic Bloom filter of equal size, point workloads only
};

struct bench_report {
  static constexpr int schema_version = 1;

  filter_config config;
  std::uint64_t key_count = 0;
  std::uint64_t distinct_keys = 0;
  double bits_per_key = 0;

  workload_spec workload;
  std::size_t rejected = 0;
  thread_split threads;

  std::size_t queries = 0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
  double fpr = 0;  // fp / (fp + tn)
  double model_fpr = 0;

  latency_stats latency;
  double insert_keys_per_sec = 0;
  double concurrent_lookups_per_sec = 0;
  std::size_t visibility_violations = 0;  // keys missing after all writers joined

  occupancy_report occupancy;

  std::optional<double> baseline_fpr;
  std::uint64_t baseline_bits = 0;
  unsigned baseline_hashes = 0;
};

/// Measures `f` (already holding `keys`) on a generated workload. Insert
/// throughput is taken from a fresh filter of the same configuration filled
/// by `threads.writers` threads while `threads.readers` threads query it.
bench_report run_bench(const filter& f, std::span<const key_type> keys, const bench_options& options);

}  // namespace bloomrf::workbench
