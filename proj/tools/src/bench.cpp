#include "bloomrf/workbench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <thread>

#include "bloomrf/classic_bloom.hpp"
#include "bloomrf/error.hpp"
#include "bloomrf/model.hpp"

namespace bloomrf::workbench {
namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

bool probe(const filter& f, const range_query& q) {
  return q.lo == q.hi ? f.point_lookup(q.lo) : f.range_lookup(q.lo, q.hi);
}

// Fresh filter built by W writers with R readers probing concurrently.
void measure_concurrent_build(const filter_config& config, std::span<const key_type> keys,
                              std::span<const range_query> queries, thread_split threads, bench_report& report) {
  filter fresh(config);
  std::atomic<unsigned> writers_left{threads.writers};
  std::atomic<std::uint64_t> lookups{0};
  std::atomic<bool> sink{false};

  const auto start = clock_type::now();
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads.writers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < keys.size(); i += threads.writers) fresh.insert(keys[i]);
      writers_left.fetch_sub(1, std::memory_order_acq_rel);
    });
  }
  for (unsigned r = 0; r < threads.readers && !queries.empty(); ++r) {
    pool.emplace_back([&, r] {
      std::uint64_t done = 0;
      bool any = false;
      for (std::size_t i = r; writers_left.load(std::memory_order_acquire) > 0; i = (i + threads.readers) % queries.size()) {
        any ^= probe(fresh, queries[i]);
        ++done;
      }
      lookups.fetch_add(done);
      if (any) sink.store(true, std::memory_order_relaxed);
    });
  }
  pool.clear();
  const double elapsed = std::max(seconds_since(start), 1e-9);

  report.insert_keys_per_sec = static_cast<double>(keys.size()) / elapsed;
  report.concurrent_lookups_per_sec = static_cast<double>(lookups.load()) / elapsed;
  report.visibility_violations =
      static_cast<std::size_t>(std::count_if(keys.begin(), keys.end(), [&](key_type k) { return !fresh.point_lookup(k); }));
}

}  // namespace

thread_split parse_threads(const std::string& text) {
  const auto colon = text.find(':');
  thread_split out;
  auto parse = [&](std::string_view part, unsigned& value) {
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    return ec == std::errc{} && end == part.data() + part.size() && value >= 1;
  };
  if (colon == std::string::npos || !parse(std::string_view(text).substr(0, colon), out.writers) ||
      !parse(std::string_view(text).substr(colon + 1), out.readers)) {
    throw error(errc::parse_error, "thread split '" + text + "' is not W:R with W, R >= 1");
  }
  return out;
}

latency_stats summarize_latencies(std::vector<double> samples) {
  latency_stats out;
  if (samples.empty()) return out;
  std::sort(samples.begin(), samples.end());
  double total = 0;
  for (const double s : samples) total += s;
  out.mean_ns = total / static_cast<double>(samples.size());
  out.median_ns = samples[samples.size() / 2];
  out.p99_ns = samples[std::min(samples.size() - 1, samples.size() * 99 / 100)];
  return out;
}

bench_report run_bench(const filter& f, std::span<const key_type> keys, const bench_options& options) {
  bench_report report;
  report.config = f.config();
  report.key_count = keys.size();
  report.workload = options.workload;
  report.workload.width = f.config().layout.width;
  report.threads = options.threads;

  const exact_set oracle(keys);
  report.distinct_keys = oracle.size();
  report.bits_per_key = keys.empty() ? 0.0 : static_cast<double>(f.config().total_bits()) / static_cast<double>(keys.size());

  auto generated = generate_workload(report.workload, &oracle);
  report.rejected = generated.rejected;
  const auto& queries = generated.queries;
  report.queries = queries.size();

  // Warm-up pass, excluded from timings.
  bool sink = false;
  for (std::size_t i = 0; i < std::min<std::size_t>(queries.size(), 1000); ++i) sink ^= probe(f, queries[i]);

  const unsigned readers = options.threads.readers;
  std::vector<std::vector<double>> samples(readers);
  std::vector<std::vector<char>> answers(readers);
  {
    std::vector<std::jthread> pool;
    for (unsigned r = 0; r < readers; ++r) {
      pool.emplace_back([&, r] {
        for (std::size_t i = r; i < queries.size(); i += readers) {
          const auto t0 = clock_type::now();
          const bool hit = probe(f, queries[i]);
          const auto t1 = clock_type::now();
          samples[r].push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
          answers[r].push_back(hit);
        }
      });
    }
  }

  std::vector<double> all_samples;
  for (unsigned r = 0; r < readers; ++r) {
    all_samples.insert(all_samples.end(), samples[r].begin(), samples[r].end());
    for (std::size_t j = 0; j < answers[r].size(); ++j) {
      const auto& q = queries[r + j * readers];
      const bool hit = answers[r][j] != 0;
      if (oracle.intersects(q.lo, q.hi)) {
        ++(hit ? report.true_positives : report.false_negatives);
      } else {
        ++(hit ? report.false_positives : report.true_negatives);
      }
    }
  }
  report.latency = summarize_latencies(std::move(all_samples));
  const auto negatives = report.false_positives + report.true_negatives;
  report.fpr = negatives == 0 ? 0.0 : static_cast<double>(report.false_positives) / static_cast<double>(negatives);
  report.model_fpr = estimate_range_fpr(f.config(), static_cast<double>(oracle.size()), report.workload.range_size);
  report.occupancy = f.occupancy();

  if (options.baseline && report.workload.range_size == 1 && !keys.empty()) {
    const auto bits = f.config().total_bits();
    classic_bloom bloom(bits, classic_bloom::optimal_hashes(report.bits_per_key));
    for (const auto k : keys) bloom.insert(k);
    std::size_t fp = 0;
    std::size_t tn = 0;
    for (const auto& q : queries) {
      if (oracle.contains(q.lo)) continue;
      ++(bloom.contains(q.lo) ? fp : tn);
    }
    report.baseline_fpr = fp + tn == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(fp + tn);
    report.baseline_bits = bloom.size_bits();
    report.baseline_hashes = bloom.hashes();
  }

  measure_concurrent_build(f.config(), keys, queries, options.threads, report);
  [[maybe_unused]] volatile bool observed = sink;
  return report;
}

}  // namespace bloomrf::workbench
