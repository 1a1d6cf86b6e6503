#pragma once

#include <stdexcept>
#include <string>

namespace bloomrf {

enum class errc {
  unsupported_width,
  sum_mismatch,
  zero_height,
  trace_too_wide,
  level_out_of_range,
  layer_out_of_range,
  replica_out_of_range,
  no_intersection,
  no_exact_layer,
  invalid_config,
  invalid_range,
  key_out_of_domain,
  bad_magic,
  version_mismatch,
  checksum_mismatch,
  truncated_stream,
  budget_too_small,
  two_ranges,
  parse_error,
};

const char* to_string(errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail);

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace bloomrf
