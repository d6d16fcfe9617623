#pragma once

#include <stdexcept>
#include <string>

namespace ftnlab {

/// Requested system is larger than the configured hard cap.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Caller passed an out-of-range site, negative beta, mismatched dimensions, ...
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Solver or root-finder failure; the message carries the diagnostic.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Backend/parameter combination that cannot be honoured.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ftnlab
