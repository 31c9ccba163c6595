#include "mdiew/scan.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "mdiew/version.hpp"

namespace mdiew {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KindInfo {
    const char* axis1;
    const char* axis2;
};

KindInfo kind_info(const std::string& kind) {
    if (kind == "white" || kind == "pauli-same" || kind == "pauli-diff" ||
        kind == "admixture-min" || kind == "admixture-max")
        return {"p1", "p2"};
    if (kind == "amplitude-damping") return {"eps1", "eps2"};
    throw ConfigError("noise_kind: unknown scan kind '" + kind + "'");
}

void validate_axis(const AxisSpec& axis, const char* label, const char* expected_name) {
    if (axis.name != expected_name)
        throw ConfigError(std::string(label) + ".name: expected '" + expected_name + "', got '" +
                          axis.name + "'");
    if (axis.steps < 2) throw ConfigError(std::string(label) + ".steps: need at least 2");
    if (!(axis.min < axis.max)) throw ConfigError(std::string(label) + ".min: must be below max");
    if (axis.min < 0.0 || axis.max > 1.0)
        throw ConfigError(std::string(label) + ".min/max: range must lie within [0, 1]");
}

std::size_t fixed_index(const ScanConfig& config, const std::string& key, std::size_t fallback) {
    const auto it = config.fixed.find(key);
    if (it == config.fixed.end()) return fallback;
    const double raw = it->second;
    const auto idx = static_cast<std::size_t>(raw);
    if (raw != static_cast<double>(idx) || idx < 1 || idx > 3)
        throw ConfigError("fixed." + key + ": must be an integer in 1..3");
    return idx;
}

ThresholdResult cell_threshold(const ScanConfig& config, double x, double y) {
    if (config.noise_kind == "white") return white_noise_threshold(x, y);
    if (config.noise_kind == "pauli-same") {
        const std::size_t idx = fixed_index(config, "index", 1);
        return pauli_threshold(idx, idx, x, y);
    }
    if (config.noise_kind == "pauli-diff") {
        const std::size_t i = fixed_index(config, "i", 1);
        const std::size_t j = fixed_index(config, "j", 2);
        if (i == j) throw ConfigError("fixed.i: indices must differ for pauli-diff");
        return pauli_threshold(i, j, x, y);
    }
    if (config.noise_kind == "amplitude-damping") return amplitude_damping_threshold(x, y);
    if (config.noise_kind == "admixture-min")
        return admixture_threshold(x, y, bloch_state({0.0, 0.0, 1.0}),
                                   bloch_state({0.0, 0.0, -1.0}));
    if (config.noise_kind == "admixture-max")
        return admixture_threshold(x, y, bloch_state({0.0, 0.0, 1.0}),
                                   bloch_state({0.0, 0.0, 1.0}));
    throw ConfigError("noise_kind: unknown scan kind '" + config.noise_kind + "'");
}

std::vector<double> axis_values(const AxisSpec& axis) {
    std::vector<double> out(axis.steps);
    const double step = (axis.max - axis.min) / static_cast<double>(axis.steps - 1);
    for (std::size_t k = 0; k < axis.steps; ++k)
        out[k] = axis.min + step * static_cast<double>(k);
    out.back() = axis.max;
    return out;
}

std::string format_cell(double v) {
    if (std::isinf(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_number(const std::string& field, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("malformed scan CSV: bad ") + what + " '" + field + "'");
    }
}

}  // namespace

ScanResult run_scan(const ScanConfig& config) {
    const KindInfo info = kind_info(config.noise_kind);
    validate_axis(config.axis1, "axis1", info.axis1);
    validate_axis(config.axis2, "axis2", info.axis2);
    ScanResult result;
    result.config = config;
    result.axis1_values = axis_values(config.axis1);
    result.axis2_values = axis_values(config.axis2);
    result.grid.assign(config.axis1.steps, std::vector<double>(config.axis2.steps, kInf));

    // Validate fixed parameters once up front so worker threads cannot throw.
    cell_threshold(config, result.axis1_values[0], result.axis2_values[0]);

    const auto fill_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < config.axis2.steps; ++j) {
                const ThresholdResult r =
                    cell_threshold(config, result.axis1_values[i], result.axis2_values[j]);
                result.grid[i][j] = r.detectable ? r.v_star : kInf;
            }
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                              config.axis1.steps);
    if (workers <= 1) {
        fill_rows(0, config.axis1.steps);
        return result;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (config.axis1.steps + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, config.axis1.steps);
        if (begin >= end) break;
        pool.emplace_back(fill_rows, begin, end);
    }
    for (auto& th : pool) th.join();
    return result;
}

void write_scan_csv(const ScanResult& result, const std::string& path) {
    std::ostringstream body;
    body << result.config.axis1.name << '\\' << result.config.axis2.name;
    for (double v : result.axis2_values) body << ", " << format_cell(v);
    body << '\n';
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
        body << format_cell(result.axis1_values[i]);
        for (double cell : result.grid[i]) body << ", " << format_cell(cell);
        body << '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body.str();
    if (!out) throw IoError("write failed for '" + path + "'");
    out.close();

    nlohmann::json meta;
    meta["config"] = scan_config_to_json(result.config);
    meta["version"] = kVersion;
    meta["seed"] = result.config.seed;
    const std::string meta_path = path + ".meta.json";
    std::ofstream meta_out(meta_path, std::ios::binary);
    if (!meta_out) throw IoError("cannot open '" + meta_path + "' for writing");
    meta_out << meta.dump(2) << '\n';
    if (!meta_out) throw IoError("write failed for '" + meta_path + "'");
}

ParsedCsv parse_scan_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<std::string> lines = split(text, '\n');
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.size() < 2) throw ConfigError("malformed scan CSV: need a header and data rows");

    ParsedCsv parsed;
    const std::vector<std::string> head = split(lines[0], ',');
    const std::vector<std::string> names = split(trim(head[0]), '\\');
    if (names.size() != 2) throw ConfigError("malformed scan CSV: header must name both axes");
    parsed.axis1_name = trim(names[0]);
    parsed.axis2_name = trim(names[1]);
    for (std::size_t k = 1; k < head.size(); ++k)
        parsed.axis2_values.push_back(parse_number(trim(head[k]), "axis value"));

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string> fields = split(lines[r], ',');
        if (fields.size() != head.size())
            throw ConfigError("malformed scan CSV: ragged row " + std::to_string(r));
        parsed.axis1_values.push_back(parse_number(trim(fields[0]), "axis value"));
        std::vector<double> row;
        for (std::size_t k = 1; k < fields.size(); ++k) {
            const std::string cell = trim(fields[k]);
            row.push_back(cell.empty() ? kInf : parse_number(cell, "cell"));
        }
        parsed.grid.push_back(std::move(row));
    }
    return parsed;
}

ScanConfig scan_config_from_json(const nlohmann::json& j) {
    try {
        ScanConfig config;
        config.noise_kind = j.at("noise_kind").get<std::string>();
        const auto read_axis = [&](const char* key) {
            const nlohmann::json& a = j.at(key);
            AxisSpec axis;
            axis.name = a.at("name").get<std::string>();
            axis.min = a.at("min").get<double>();
            axis.max = a.at("max").get<double>();
            const auto steps = a.at("steps").get<long long>();
            if (steps < 0) throw ConfigError(std::string(key) + ".steps: must be nonnegative");
            axis.steps = static_cast<std::size_t>(steps);
            return axis;
        };
        config.axis1 = read_axis("axis1");
        config.axis2 = read_axis("axis2");
        if (j.contains("fixed"))
            for (const auto& [key, value] : j.at("fixed").items())
                config.fixed[key] = value.get<double>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid scan config: ") + e.what());
    }
}

nlohmann::json scan_config_to_json(const ScanConfig& config) {
    const auto axis_json = [](const AxisSpec& axis) {
        return nlohmann::json{
            {"name", axis.name}, {"min", axis.min}, {"max", axis.max}, {"steps", axis.steps}};
    };
    nlohmann::json j;
    j["noise_kind"] = config.noise_kind;
    j["axis1"] = axis_json(config.axis1);
    j["axis2"] = axis_json(config.axis2);
    j["fixed"] = nlohmann::json::object();
    for (const auto& [key, value] : config.fixed) j["fixed"][key] = value;
    j["seed"] = config.seed;
    return j;
}

}  // namespace mdiew
