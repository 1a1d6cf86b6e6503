#include "bloomrf/workbench/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "bloomrf/advisor.hpp"
#include "bloomrf/config_text.hpp"
#include "bloomrf/error.hpp"
#include "bloomrf/serialize.hpp"
#include "bloomrf/workbench/bench.hpp"
#include "bloomrf/workbench/keys_io.hpp"
#include "bloomrf/workbench/report.hpp"

namespace bloomrf::workbench {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string hex(std::span<const std::uint8_t> bytes) {
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (const auto b : bytes) out << std::setw(2) << static_cast<unsigned>(b);
  return out.str();
}

std::string list(const std::vector<double>& values, int precision = 3) {
  std::ostringstream out;
  out << std::setprecision(precision);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
  return out.str();
}

struct build_args {
  std::string keys;
  std::string format = "text";
  std::string config;
  double bits_per_key = 0;
  std::string range_hint = "large";
  unsigned width = 64;
  std::uint64_t seed = default_seed;
  std::string out;
};

struct bench_args {
  std::string filter;
  std::string keys;
  std::string format = "text";
  std::string dist = "uniform";
  std::uint64_t range_size = 1;
  std::size_t queries = 100000;
  bool empty_only = false;
  std::string threads = "1:1";
  std::uint64_t seed = 1;
  double zipf_theta = 0.99;
  bool no_baseline = false;
  std::string report;
  std::string csv;
};

struct advise_args {
  double keys = 0;
  double bits_per_key = 0;
  std::string range_hint = "large";
  unsigned width = 64;
  double point_weight = 4.0;
  std::uint64_t seed = default_seed;
};

int cmd_build(const build_args& a, std::ostream& out) {
  const auto keys = read_keys(a.keys, parse_key_format(a.format));
  spdlog::info("read {} keys from {}", keys.size(), a.keys);

  filter_config config;
  if (!a.config.empty()) {
    config = parse_config_text(read_file(a.config));
  } else {
    advisor_input input;
    input.keys = static_cast<double>(keys.size());
    input.bits = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(std::ceil(a.bits_per_key * input.keys)));
    input.range_hint = parse_range_hint(a.range_hint);
    input.width = a.width;
    input.seed = a.seed;
    config = advise(input).config;
  }

  filter f(config);
  for (const auto k : keys) f.insert(k);
  const auto bytes = serialize(f);
  write_file(a.out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));

  const auto occ = f.occupancy();
  std::uint64_t set_bits = 0;
  for (std::size_t j = 0; j < f.segment_count(); ++j) set_bits += f.segment(j).popcount();
  out << "keys: " << keys.size() << "\n";
  out << "total_bits: " << config.total_bits() << "\n";
  out << "set_bits: " << set_bits << "\n";
  out << "bits_per_key: "
      << (keys.empty() ? 0.0 : static_cast<double>(config.total_bits()) / static_cast<double>(keys.size())) << "\n";
  out << "segment_fill: " << list(occ.segment_fill) << "\n";
  out << "mean_element_bits: " << list(occ.mean_element_bits) << "\n";
  out << "bytes_written: " << bytes.size() << "\n";
  out << to_text(config);
  return 0;
}

int cmd_bench(const bench_args& a, std::ostream& out) {
  const auto raw = read_file(a.filter);
  const auto f = deserialize(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
  const auto keys = read_keys(a.keys, parse_key_format(a.format));

  bench_options options;
  options.workload.dist = parse_distribution(a.dist);
  options.workload.query_count = a.queries;
  options.workload.range_size = a.range_size;
  options.workload.empty_only = a.empty_only;
  options.workload.seed = a.seed;
  options.workload.zipf_theta = a.zipf_theta;
  options.threads = parse_threads(a.threads);
  options.baseline = !a.no_baseline;

  spdlog::info("bench: {} {} queries of size {} over {} keys", a.queries, a.dist, a.range_size, keys.size());
  const auto report = run_bench(f, keys, options);
  const auto doc = to_json(report);
  if (!a.report.empty()) write_file(a.report, doc.dump(2) + "\n");
  if (!a.csv.empty()) write_file(a.csv, to_csv(report));

  out << "fpr: " << report.fpr << " (model " << report.model_fpr << ")\n";
  out << "false_negatives: " << report.false_negatives << "\n";
  out << "latency_ns: mean " << report.latency.mean_ns << " median " << report.latency.median_ns << " p99 "
      << report.latency.p99_ns << "\n";
  out << "insert_keys_per_sec: " << report.insert_keys_per_sec << "\n";
  if (report.baseline_fpr) out << "baseline_fpr: " << *report.baseline_fpr << "\n";
  if (a.report.empty()) out << doc.dump(2) << "\n";
  return report.false_negatives == 0 ? 0 : 3;
}

int cmd_advise(const advise_args& a, std::ostream& out) {
  advisor_input input;
  input.keys = a.keys;
  input.bits = static_cast<std::uint64_t>(std::ceil(a.bits_per_key * a.keys));
  input.range_hint = parse_range_hint(a.range_hint);
  input.width = a.width;
  input.point_weight = a.point_weight;
  input.seed = a.seed;
  const auto result = advise(input);

  out << "# " << (result.basic ? "basic" : "segmented") << " configuration, " << result.config.segment_bits.size()
      << " segment(s), " << result.config.total_bits() << " of " << input.bits << " bits\n";
  out << to_text(result.config);
  out << "# fpr_point=" << result.fpr_p << " fpr_max=" << result.fpr_m << " fpr_weighted=" << result.fpr_w << "\n";
  out << "# predicted fpr by level (level: fpr)\n";
  for (std::size_t level = 0; level < result.level_fprs.size(); ++level) {
    out << "#   " << level << ": " << result.level_fprs[level] << "\n";
  }
  out << "# header " << hex(serialize_header(result.config)) << "\n";
  return 0;
}

}  // namespace

unsigned parse_range_hint(const std::string& text) {
  if (text == "small") return 5;
  if (text == "mid") return 10;
  if (text == "large") return 17;
  unsigned value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || value > 64) {
    throw error(errc::parse_error, "range hint '" + text + "' is not small|mid|large or an exponent 0..64");
  }
  return value;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bloomrf point-range filter workbench", "bloomrf"};
  app.require_subcommand(1);

  build_args b;
  auto* build = app.add_subcommand("build", "Build a filter from a key file and serialize it");
  build->add_option("--keys", b.keys, "Key file")->required();
  build->add_option("--format", b.format, "Key file format: text|raw")->capture_default_str();
  auto* config_opt = build->add_option("--config", b.config, "Canonical config text file");
  auto* bpk_opt = build->add_option("--bits-per-key", b.bits_per_key, "Memory budget; runs the advisor");
  config_opt->excludes(bpk_opt);
  build->add_option("--range-hint", b.range_hint, "small|mid|large or log2 of the largest range")->capture_default_str();
  build->add_option("--width", b.width, "Key width in bits")->capture_default_str();
  build->add_option("--seed", b.seed, "Hash seed");
  build->add_option("--out", b.out, "Output filter file")->required();

  bench_args q;
  auto* bench = app.add_subcommand("bench", "Measure FPR, latency and throughput of a filter");
  bench->add_option("--filter", q.filter, "Serialized filter")->required();
  bench->add_option("--keys", q.keys, "Key file the filter was built from")->required();
  bench->add_option("--format", q.format, "Key file format: text|raw")->capture_default_str();
  bench->add_option("--dist", q.dist, "uniform|normal|zipfian")->capture_default_str();
  bench->add_option("--range-size", q.range_size, "Keys per query range")->capture_default_str();
  bench->add_option("--queries", q.queries, "Query count")->capture_default_str();
  bench->add_flag("--empty-only", q.empty_only, "Only issue queries that hold no key");
  bench->add_option("--threads", q.threads, "Writer:reader threads")->capture_default_str();
  bench->add_option("--seed", q.seed, "Workload seed")->capture_default_str();
  bench->add_option("--zipf-theta", q.zipf_theta, "Zipfian skew")->capture_default_str();
  bench->add_flag("--no-baseline", q.no_baseline, "Skip the classic Bloom filter baseline");
  bench->add_option("--report", q.report, "JSON report path");
  bench->add_option("--csv", q.csv, "CSV report path");

  advise_args v;
  auto* adv = app.add_subcommand("advise", "Recommend a configuration for a memory budget");
  adv->add_option("--keys-count", v.keys, "Expected number of keys")->required();
  adv->add_option("--bits-per-key", v.bits_per_key, "Memory budget per key")->required();
  adv->add_option("--range-hint", v.range_hint, "small|mid|large or log2 of the largest range")->capture_default_str();
  adv->add_option("--width", v.width, "Key width in bits")->capture_default_str();
  adv->add_option("--point-weight", v.point_weight, "Weight of the point FPR")->capture_default_str();
  adv->add_option("--seed", v.seed, "Hash seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build) {
      if (b.config.empty() && b.bits_per_key <= 0) {
        err << "build: pass --config or --bits-per-key\n";
        return 2;
      }
      return cmd_build(b, out);
    }
    if (*bench) return cmd_bench(q, out);
    return cmd_advise(v, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bloomrf::workbench
