#pragma once

#include <stdexcept>
#include <string>

namespace act {

// Bad configuration: unknown keys, out-of-range parameters, invalid synth specs.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: missing files, parse failures, count mismatches.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Target box too small for the template size constraints.
struct SizingError : std::runtime_error {
    explicit SizingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace act
