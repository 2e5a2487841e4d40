#pragma once

#include <stdexcept>
#include <string>

namespace meinhardt {

// Invalid parameters or options supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or degenerate input data (ragged CSV, zero Fisher information, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during a computation (non-finite state, blow-up).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace meinhardt
