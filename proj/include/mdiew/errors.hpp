#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mdiew {

// Shape or subsystem-layout mismatch between operands.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Product dimension exceeds the configured cap.
struct SizeError : std::length_error {
    explicit SizeError(const std::string& what) : std::length_error(what) {}
};

// A computed quantity violated a numeric contract (hermiticity, probability
// bounds, spectral range, imaginary residue).
struct NumericContractError : std::runtime_error {
    explicit NumericContractError(const std::string& what) : std::runtime_error(what) {}
};

// A channel failed trace preservation or complete positivity.
struct ChannelContractError : std::runtime_error {
    explicit ChannelContractError(const std::string& what) : std::runtime_error(what) {}
};

// Two internal evaluation paths that must agree did not.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid CLI or scan configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Non-fatal diagnostics (e.g. tiny negative probabilities clamped to zero) go
// through a replaceable handler so tests can capture or silence them.
using WarningHandler = std::function<void(const std::string&)>;

// Returns the previously installed handler; pass nullptr for the stderr default.
WarningHandler set_warning_handler(WarningHandler handler);
void emit_warning(const std::string& message);

}  // namespace mdiew
