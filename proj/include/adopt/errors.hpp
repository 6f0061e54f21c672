#pragma once

#include <stdexcept>
#include <string>

namespace adopt {

// Invalid contract terms, model parameters or run configuration.
// CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data (CSV parsing, spacing, signs).
// CLI exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime: non-convergence, degenerate variance,
// undefined ratios. CLI exit code 4.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adopt
