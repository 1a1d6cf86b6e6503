#include "bloomrf/error.hpp"

namespace bloomrf {

const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::unsupported_width: return "UnsupportedWidth";
    case errc::sum_mismatch: return "SumMismatch";
    case errc::zero_height: return "ZeroHeight";
    case errc::trace_too_wide: return "TraceTooWide";
    case errc::level_out_of_range: return "LevelOutOfRange";
    case errc::layer_out_of_range: return "LayerOutOfRange";
    case errc::replica_out_of_range: return "ReplicaOutOfRange";
    case errc::no_intersection: return "NoIntersection";
    case errc::no_exact_layer: return "NoExactLayer";
    case errc::invalid_config: return "InvalidConfig";
    case errc::invalid_range: return "InvalidRange";
    case errc::key_out_of_domain: return "KeyOutOfDomain";
    case errc::bad_magic: return "BadMagic";
    case errc::version_mismatch: return "VersionMismatch";
    case errc::checksum_mismatch: return "ChecksumMismatch";
    case errc::truncated_stream: return "TruncatedStream";
    case errc::budget_too_small: return "BudgetTooSmall";
    case errc::two_ranges: return "TwoRanges";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

error::error(errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace bloomrf
