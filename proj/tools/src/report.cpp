#include "bloomrf/workbench/report.hpp"

#include <sstream>

#include "bloomrf/config_text.hpp"

namespace bloomrf::workbench {

nlohmann::json config_to_json(const filter_config& config) {
  nlohmann::json out;
  out["width"] = config.layout.width;
  out["heights"] = config.layout.heights;
  out["hashes"] = config.hashes;
  out["segment_of"] = config.segment_of;
  out["segment_bits"] = config.segment_bits;
  out["total_bits"] = config.total_bits();
  out["early_stop"] = config.early_stop_threshold ? nlohmann::json(*config.early_stop_threshold) : nlohmann::json("off");
  out["start_layer"] = config.start_layer;
  out["seed"] = config.seed;
  out["text"] = to_text(config);
  return out;
}

nlohmann::json to_json(const bench_report& r) {
  nlohmann::json out;
  out["schema_version"] = bench_report::schema_version;
  out["config"] = config_to_json(r.config);
  out["keys"] = {{"count", r.key_count}, {"distinct", r.distinct_keys}, {"bits_per_key", r.bits_per_key}};

  nlohmann::json workload;
  workload["distribution"] = to_string(r.workload.dist);
  workload["query_count"] = r.workload.query_count;
  workload["range_size"] = r.workload.range_size;
  workload["empty_only"] = r.workload.empty_only;
  workload["seed"] = r.workload.seed;
  if (r.workload.dist == distribution::zipfian) {
    workload["zipf_theta"] = r.workload.zipf_theta;
    workload["zipf_buckets"] = r.workload.zipf_buckets;
  }
  workload["rejected_candidates"] = r.rejected;
  out["workload"] = workload;
  out["threads"] = {{"writers", r.threads.writers}, {"readers", r.threads.readers}};

  out["results"] = {
      {"queries", r.queries},
      {"true_positives", r.true_positives},
      {"false_positives", r.false_positives},
      {"true_negatives", r.true_negatives},
      {"false_negatives", r.false_negatives},
      {"fpr", r.fpr},
      {"model_fpr", r.model_fpr},
  };
  out["latency_ns"] = {{"mean", r.latency.mean_ns}, {"median", r.latency.median_ns}, {"p99", r.latency.p99_ns}};
  out["throughput"] = {
      {"insert_keys_per_sec", r.insert_keys_per_sec},
      {"concurrent_lookups_per_sec", r.concurrent_lookups_per_sec},
      {"visibility_violations", r.visibility_violations},
  };
  out["occupancy"] = {
      {"segment_fill", r.occupancy.segment_fill},
      {"mean_element_bits", r.occupancy.mean_element_bits},
      {"mean_occupied_element_bits", r.occupancy.mean_occupied_element_bits},
  };
  if (r.baseline_fpr) {
    out["baseline"] = {{"kind", "classic_bloom"}, {"bits", r.baseline_bits}, {"hashes", r.baseline_hashes},
                       {"fpr", *r.baseline_fpr}};
  }
  return out;
}

namespace {

void flatten(const nlohmann::json& node, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (node.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < node.size(); ++i) joined += (i ? ";" : "") + node[i].dump();
    out.emplace_back(prefix, joined);
  } else if (node.is_string()) {
    out.emplace_back(prefix, node.get<std::string>());
  } else {
    out.emplace_back(prefix, node.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

}  // namespace

std::string to_csv(const bench_report& report) {
  auto doc = to_json(report);
  doc["config"].erase("text");
  std::vector<std::pair<std::string, std::string>> fields;
  flatten(doc, "", fields);
  std::ostringstream header;
  std::ostringstream values;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    header << (i ? "," : "") << csv_field(fields[i].first);
    values << (i ? "," : "") << csv_field(fields[i].second);
  }
  return header.str() + "\n" + values.str() + "\n";
}

}  // namespace bloomrf::workbench
