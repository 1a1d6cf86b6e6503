#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "bloomrf/dyadic.hpp"

namespace bloomrf::workbench {

enum class key_format {
  text,  // one key per line, decimal or 0x-prefixed hex; blank lines and '#' comments skipped
  raw,   // packed little-endian 8-byte records
};

/// Throws error{parse_error} naming the offending line (text) or the file size (raw).
std::vector<key_type> parse_text_keys(std::istream& in);
std::vector<key_type> parse_raw_keys(std::istream& in);
std::vector<key_type> read_keys(const std::filesystem::path& path, key_format format);

void write_text_keys(const std::filesystem::path& path, std::span<const key_type> keys);
void write_raw_keys(const std::filesystem::path& path, std::span<const key_type> keys);

key_format parse_key_format(const std::string& name);

}  // namespace bloomrf::workbench
