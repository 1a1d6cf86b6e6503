#include "bloomrf/config_text.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "bloomrf/error.hpp"

namespace bloomrf {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s, std::size_t line) {
  s = trim(s);
  int base = 10;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw error(errc::parse_error, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

template <class T>
std::vector<T> parse_list(std::string_view s, std::size_t line) {
  std::vector<T> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(static_cast<T>(parse_u64(s.substr(0, comma), line)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string to_text(const filter_config& config) {
  std::ostringstream out;
  out << "width=" << config.layout.width << '\n'
      << "heights=" << join(config.layout.heights) << '\n'
      << "hashes=" << join(config.hashes) << '\n'
      << "segment_of=" << join(config.segment_of) << '\n'
      << "segment_bits=" << join(config.segment_bits) << '\n'
      << "early_stop="
      << (config.early_stop_threshold ? std::to_string(*config.early_stop_threshold) : std::string("off")) << '\n'
      << "start_layer=" << config.start_layer << '\n'
      << "seed=0x" << std::hex << config.seed << std::dec << '\n';
  return out.str();
}

filter_config parse_config_text(std::string_view text) {
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> fields;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw error(errc::parse_error, "line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key(trim(line.substr(0, eq)));
    static const char* known[] = {"width",        "heights",    "hashes",      "segment_of",
                                  "segment_bits", "early_stop", "start_layer", "seed"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw error(errc::parse_error, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    fields[key] = {std::string(trim(line.substr(eq + 1))), line_no};
  }

  auto field = [&](const char* key) -> const std::pair<std::string, std::size_t>& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw error(errc::parse_error, std::string("missing key '") + key + "'");
    return it->second;
  };

  filter_config config;
  const auto& [width, width_line] = field("width");
  const auto& [heights, heights_line] = field("heights");
  const auto width_value = static_cast<unsigned>(parse_u64(width, width_line));
  const auto height_values = parse_list<unsigned>(heights, heights_line);
  try {
    config.layout = build_layout(width_value, height_values);
  } catch (const error& e) {
    throw error(errc::invalid_config, e.what());
  }
  config.hashes = parse_list<unsigned>(field("hashes").first, field("hashes").second);
  config.segment_of = parse_list<unsigned>(field("segment_of").first, field("segment_of").second);
  config.segment_bits = parse_list<std::uint64_t>(field("segment_bits").first, field("segment_bits").second);
  if (const auto it = fields.find("early_stop"); it != fields.end()) {
    if (it->second.first == "off") {
      config.early_stop_threshold.reset();
    } else {
      config.early_stop_threshold = static_cast<unsigned>(parse_u64(it->second.first, it->second.second));
    }
  }
  if (const auto it = fields.find("start_layer"); it != fields.end()) {
    config.start_layer = static_cast<unsigned>(parse_u64(it->second.first, it->second.second));
  }
  if (const auto it = fields.find("seed"); it != fields.end()) {
    config.seed = parse_u64(it->second.first, it->second.second);
  }
  validate(config);
  return config;
}

}  // namespace bloomrf
