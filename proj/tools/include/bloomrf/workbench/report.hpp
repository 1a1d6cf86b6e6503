#pragma once

#include <string>

#include "json.hpp"

#include "bloomrf/workbench/bench.hpp"

namespace bloomrf::workbench {

/// Versioned report document; "schema_version" bumps on incompatible changes.
nlohmann::json to_json(const bench_report& report);

/// Flat projection of to_json(): a header line and one value line.
std::string to_csv(const bench_report& report);

nlohmann::json config_to_json(const filter_config& config);

}  // namespace bloomrf::workbench
