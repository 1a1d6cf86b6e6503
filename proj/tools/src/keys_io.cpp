#include "bloomrf/workbench/keys_io.hpp"

#include <charconv>
#include <fstream>

#include "bloomrf/error.hpp"

namespace bloomrf::workbench {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<key_type> parse_text_keys(std::istream& in) {
  std::vector<key_type> keys;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      text.remove_prefix(2);
      base = 16;
    }
    key_type key = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), key, base);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      throw error(errc::parse_error, "line " + std::to_string(number) + ": not a 64-bit key: '" + line + "'");
    }
    keys.push_back(key);
  }
  return keys;
}

std::vector<key_type> parse_raw_keys(std::istream& in) {
  std::vector<key_type> keys;
  unsigned char record[8];
  std::uint64_t offset = 0;
  while (in.read(reinterpret_cast<char*>(record), sizeof record)) {
    key_type key = 0;
    for (int i = 7; i >= 0; --i) key = key << 8 | record[i];
    keys.push_back(key);
    offset += 8;
  }
  if (in.gcount() != 0) {
    throw error(errc::parse_error, "trailing " + std::to_string(in.gcount()) + " bytes after offset " +
                                       std::to_string(offset) + "; raw key files hold 8-byte records");
  }
  return keys;
}

std::vector<key_type> read_keys(const std::filesystem::path& path, key_format format) {
  if (format == key_format::raw) {
    auto in = open_input(path, std::ios::binary);
    return parse_raw_keys(in);
  }
  auto in = open_input(path, std::ios::in);
  return parse_text_keys(in);
}

void write_text_keys(const std::filesystem::path& path, std::span<const key_type> keys) {
  std::ofstream out(path);
  for (const auto k : keys) out << k << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_raw_keys(const std::filesystem::path& path, std::span<const key_type> keys) {
  std::ofstream out(path, std::ios::binary);
  for (const auto k : keys) {
    char record[8];
    for (int i = 0; i < 8; ++i) record[i] = static_cast<char>(k >> (8 * i));
    out.write(record, sizeof record);
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

key_format parse_key_format(const std::string& name) {
  if (name == "text") return key_format::text;
  if (name == "raw") return key_format::raw;
  throw error(errc::parse_error, "unknown key format '" + name + "' (text|raw)");
}

}  // namespace bloomrf::workbench
