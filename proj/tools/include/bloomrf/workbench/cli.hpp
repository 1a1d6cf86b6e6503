#pragma once

#include <ostream>
#include <string>

namespace bloomrf::workbench {

/// Entry point of the `bloomrf` tool; returns the process exit code.
/// Subcommands: build, bench, advise.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "small" (2^5), "mid" (2^10), "large" (2^17) or a log2 exponent.
unsigned parse_range_hint(const std::string& text);

}  // namespace bloomrf::workbench
