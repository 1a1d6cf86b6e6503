#pragma once

#include <string>
#include <string_view>

#include "bloomrf/config.hpp"

namespace bloomrf {

/// Canonical text form, one `key=value` per line, in this order:
///
///   width=64
///   heights=28,2,2,4,7,7,7,7
///   hashes=0,2,1,1,1,1,1,1
///   segment_of=0,1,1,1,2,2,2,2
///   segment_bits=268435456,33554432,67108864
///   early_stop=3            (or "off")
///   start_layer=1
///   seed=0x9e3779b97f4a7c15
///
/// Blank lines and lines starting with '#' are ignored when parsing.
std::string to_text(const filter_config& config);

/// Throws error{parse_error} (with the offending line number) or
/// error{invalid_config}.
filter_config parse_config_text(std::string_view text);

}  // namespace bloomrf
