#pragma once

#include <stdexcept>
#include <string>

namespace packetgraph {

// Invalid input, violated precondition, unparseable config.  CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured cap (class count, frontier size, DFS count, DP grid) would be
// exceeded.  Never silently truncates.  CLI exit code 3.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// A query needs more spectrum than was enumerated (lambda or T beyond cutoff).
struct InsufficientSpectrumError : ConfigError {
    explicit InsufficientSpectrumError(const std::string& msg) : ConfigError(msg) {}
};

// Degenerate grid, zero counts or rank-deficient system in a fit.
struct FitFailureError : ConfigError {
    explicit FitFailureError(const std::string& msg) : ConfigError(msg) {}
};

// Operation not defined for this manifold variant.
struct UnsupportedError : ConfigError {
    explicit UnsupportedError(const std::string& msg) : ConfigError(msg) {}
};

} // namespace packetgraph
