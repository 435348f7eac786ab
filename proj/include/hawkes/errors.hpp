#pragma once
#include <stdexcept>
#include <string>

namespace hawkes {

// Error taxonomy maps onto CLI exit codes: validation -> 2, numeric -> 3,
// regime mismatch -> 4.  Unsupported operations are treated as validation
// failures (the request itself is ill-posed, not the arithmetic).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RegimeError : std::runtime_error {
    explicit RegimeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedError : ValidationError {
    explicit UnsupportedError(const std::string& msg) : ValidationError(msg) {}
};

}
