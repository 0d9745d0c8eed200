#pragma once

#include <stdexcept>
#include <string>

namespace footcast {

// Error categories map onto the CLI exit codes (config=1, fit=2, data=3).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Too few observations to fit; the caller falls back to pooled coefficients.
struct InsufficientDataError : FitError {
    explicit InsufficientDataError(const std::string& msg) : FitError(msg) {}
};

// Invalid distribution parameters or out-of-domain arguments.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace footcast
