#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "bloomrf/advisor.hpp"
#include "bloomrf/error.hpp"
#include "bloomrf/workbench/bench.hpp"
#include "bloomrf/workbench/keys_io.hpp"
#include "bloomrf/workbench/report.hpp"
#include "bloomrf/workbench/workload.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bloomrf;
using namespace bloomrf::workbench;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bloomrf_wb_" + std::to_string(::getpid()) + "_" + name);
}

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  return errc::sum_mismatch;
}

}  // namespace

TEST_CASE("text key files") {
  std::istringstream in("129\n0x83\n\n# comment\n  160  \n211\r\n18446744073709551615\n");
  CHECK(parse_text_keys(in) == std::vector<key_type>{129, 131, 160, 211, ~key_type{0}});

  std::istringstream bad("1\n2\nthree\n");
  try {
    parse_text_keys(bad);
    FAIL("expected a parse error");
  } catch (const error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream overflow("18446744073709551616\n");
  CHECK(code_of([&] { parse_text_keys(overflow); }) == errc::parse_error);
  std::istringstream empty("");
  CHECK(parse_text_keys(empty).empty());
}

TEST_CASE("raw key files") {
  const auto keys = testing::random_keys(1000, 64, 1);
  const auto path = temp_file("raw.bin");
  write_raw_keys(path, keys);
  CHECK(std::filesystem::file_size(path) == 8000);
  CHECK(read_keys(path, key_format::raw) == keys);
  {
    std::ifstream in(path, std::ios::binary);
    unsigned char first[8];
    in.read(reinterpret_cast<char*>(first), 8);
    CHECK(first[0] == (keys[0] & 0xff));
    CHECK(first[7] == (keys[0] >> 56));
  }
  std::ofstream(path, std::ios::app | std::ios::binary) << "xyz";
  CHECK(code_of([&] { read_keys(path, key_format::raw); }) == errc::parse_error);

  const auto text = temp_file("keys.txt");
  write_text_keys(text, keys);
  CHECK(read_keys(text, key_format::text) == keys);
  std::filesystem::remove(path);
  std::filesystem::remove(text);
}

TEST_CASE("empty-only workloads hold no keys") {
  const auto keys = testing::random_keys(20000, 32, 2);
  const exact_set oracle(keys);
  for (auto dist : {distribution::uniform, distribution::normal, distribution::zipfian}) {
    workload_spec spec;
    spec.dist = dist;
    spec.query_count = 5000;
    spec.range_size = 5000;
    spec.width = 32;
    spec.seed = 3;
    const auto w = generate_workload(spec, &oracle);
    REQUIRE(w.queries.size() == 5000);
    CHECK(w.rejected > 0);
    for (const auto& q : w.queries) {
      CHECK(q.hi - q.lo == 4999);
      CHECK_FALSE(oracle.intersects(q.lo, q.hi));
    }
    const auto again = generate_workload(spec, &oracle);
    CHECK(std::equal(w.queries.begin(), w.queries.end(), again.queries.begin(),
                     [](const range_query& a, const range_query& b) { return a.lo == b.lo && a.hi == b.hi; }));
  }
  workload_spec spec;
  spec.range_size = 1;
  spec.query_count = 100;
  const auto points = generate_workload(spec, &oracle);
  for (const auto& q : points.queries) CHECK(q.lo == q.hi);
  CHECK(code_of([&] { generate_workload(spec, nullptr); }) == errc::invalid_config);
  spec.range_size = 0;
  CHECK(code_of([&] { generate_workload(spec, &oracle); }) == errc::invalid_range);
}

TEST_CASE("zipfian ranks fit their distribution") {
  zipfian_generator zipf(1000, 0.99);
  std::mt19937_64 rng(4);
  constexpr int samples = 200000;
  constexpr int head = 30;
  std::vector<double> observed(head + 1, 0);
  for (int i = 0; i < samples; ++i) {
    const auto r = zipf(rng);
    REQUIRE(r < 1000);
    observed[std::min<std::uint64_t>(r, head)] += 1;
  }
  double tail = 1;
  double chi2 = 0;
  for (int r = 0; r < head; ++r) {
    const double p = zipf.probability(r);
    tail -= p;
    const double expected = p * samples;
    chi2 += (observed[r] - expected) * (observed[r] - expected) / expected;
  }
  chi2 += (observed[head] - tail * samples) * (observed[head] - tail * samples) / (tail * samples);
  // 30 degrees of freedom: the 0.1% critical value is 59.7.
  CHECK(chi2 < 59.7);
}

TEST_CASE("zipfian and normal lower bounds") {
  workload_spec spec;
  spec.empty_only = false;
  spec.width = 32;
  spec.query_count = 100000;
  spec.dist = distribution::zipfian;
  spec.zipf_buckets = 1024;
  const auto w = generate_workload(spec, nullptr);
  const zipfian_generator zipf(1024, 0.99);
  const key_type span = low_mask(32) / 1024 + 1;
  std::size_t first = 0;
  for (const auto& q : w.queries) first += q.lo < span;
  CHECK(first / 100000.0 == doctest::Approx(zipf.probability(0)).epsilon(0.05));

  spec.dist = distribution::normal;
  const auto n = generate_workload(spec, nullptr);
  double sum = 0;
  double sq = 0;
  for (const auto& q : n.queries) {
    sum += static_cast<double>(q.lo);
    sq += static_cast<double>(q.lo) * static_cast<double>(q.lo);
  }
  const double mean = sum / 100000;
  const double sd = std::sqrt(sq / 100000 - mean * mean);
  CHECK(mean / std::ldexp(1.0, 32) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sd / std::ldexp(1.0, 32) == doctest::Approx(0.125).epsilon(0.03));
}

TEST_CASE("bench report") {
  const auto keys = testing::random_keys(20000, 64, 5);
  advisor_input in;
  in.keys = 20000;
  in.bits = 20000 * 16;
  filter f(advise(in).config);
  for (auto k : keys) f.insert(k);

  bench_options options;
  options.workload.query_count = 5000;
  options.workload.range_size = 1;
  options.workload.empty_only = true;
  options.threads = {2, 2};
  const auto r = run_bench(f, keys, options);
  CHECK(r.queries == 5000);
  CHECK(r.true_positives == 0);
  CHECK(r.false_negatives == 0);
  CHECK(r.false_positives + r.true_negatives == 5000);
  CHECK(r.fpr == doctest::Approx(r.false_positives / 5000.0));
  CHECK(r.visibility_violations == 0);
  REQUIRE(r.baseline_fpr.has_value());
  CHECK(r.latency.median_ns <= r.latency.p99_ns);
  CHECK(r.insert_keys_per_sec > 0);

  const auto again = run_bench(f, keys, options);
  CHECK(again.false_positives == r.false_positives);

  options.workload.range_size = 1000;
  options.workload.empty_only = false;
  options.threads = {1, 1};
  const auto mixed = run_bench(f, keys, options);
  CHECK(mixed.false_negatives == 0);
  CHECK_FALSE(mixed.baseline_fpr.has_value());

  const auto doc = to_json(r);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["results"]["queries"] == 5000);
  CHECK(doc["config"]["segment_bits"].size() == f.config().segment_bits.size());
  const auto csv = to_csv(r);
  const auto nl = csv.find('\n');
  const auto header = csv.substr(0, nl);
  const auto values = csv.substr(nl + 1);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(values.begin(), values.end(), ','));
  CHECK(header.find("results.fpr") != std::string::npos);
}

TEST_CASE("thread split parsing") {
  CHECK(parse_threads("4:4").writers == 4);
  CHECK(parse_threads("1:8").readers == 8);
  for (const char* bad : {"4", "0:1", "1:0", "a:b", "2:3:4", ""}) {
    CHECK(code_of([&] { parse_threads(bad); }) == errc::parse_error);
  }
}
