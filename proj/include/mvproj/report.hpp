#pragma once

// Machine-diffable report formats.
//
// Test report JSON keys: method, statistic, p_value, per_center[], B, seed,
// runtime_ms. The CSV form has one row per center and a final summary row.

#include <json.hpp>
#include <span>
#include <string>

#include "mvproj/core.hpp"
#include "mvproj/generators.hpp"
#include "mvproj/pipeline.hpp"
#include "mvproj/power.hpp"

namespace mvproj {

nlohmann::json center_to_json(const CenterSpec& center);

/// include_runtime = false writes runtime_ms as 0, for byte-stable output.
nlohmann::json to_json(const TestReport& report, bool include_runtime = true);
std::string report_csv(const TestReport& report);

nlohmann::json to_json(const PipelineConfig& config);
nlohmann::json to_json(const ScenarioSpec& scenario);
nlohmann::json power_to_json(const PipelineConfig& config, const ScenarioSpec& scenario,
                             std::span<const PowerTable> tables);
std::string power_csv(std::span<const PowerTable> tables);

}  // namespace mvproj
