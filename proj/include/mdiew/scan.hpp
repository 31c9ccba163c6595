#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "mdiew/thresholds.hpp"

namespace mdiew {

struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 101;
};

// Two-parameter sweep over one closed-form threshold family. Supported kinds:
// white, pauli-same, pauli-diff, amplitude-damping, admixture-min,
// admixture-max. Axis names must be the family's parameter names (p1/p2 or
// eps1/eps2); fixed holds the remaining scalars (Pauli indices i, j).
struct ScanConfig {
    std::string noise_kind = "white";
    AxisSpec axis1, axis2;
    std::map<std::string, double> fixed;
    std::uint64_t seed = 0;
};

struct ScanResult {
    ScanConfig config;
    std::vector<double> axis1_values, axis2_values;
    // grid[i][j] is v_star at (axis1_values[i], axis2_values[j]) when the
    // point is detectable, infinity otherwise (written as an empty cell).
    std::vector<std::vector<double>> grid;
};

// Validates the config (ConfigError naming the offending field) and fills the
// grid; rows are evaluated concurrently but assembled in order.
ScanResult run_scan(const ScanConfig& config);

// CSV layout: header `axis1\axis2, v...`, then one row per axis1 value.
// 12 significant digits, LF endings, infinity as empty cell. Also writes
// <path>.meta.json echoing the config, tool version and seed.
void write_scan_csv(const ScanResult& result, const std::string& path);

struct ParsedCsv {
    std::string axis1_name, axis2_name;
    std::vector<double> axis1_values, axis2_values;
    std::vector<std::vector<double>> grid;
};

ParsedCsv parse_scan_csv(const std::string& path);

// Schema: {"noise_kind": str, "axis1": {"name","min","max","steps"},
// "axis2": {...}, "fixed": {str: num}, "seed": int}.
ScanConfig scan_config_from_json(const nlohmann::json& j);
nlohmann::json scan_config_to_json(const ScanConfig& config);

}  // namespace mdiew
