#pragma once

#include <stdexcept>
#include <string>

namespace graphmat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad numeric argument (d out of range, nonpositive cutoff, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Query outside the valid domain (removed vertex, self-loop, ...).
struct DomainError : Error {
    using Error::Error;
};

// Malformed shape or config input; message names the offending element.
struct ValidationError : Error {
    using Error::Error;
};

// Instance exceeds a brute-force or materialization cap.
struct UnsupportedSizeError : Error {
    using Error::Error;
};

// Ribbon enumeration would exceed the configured count cap.
struct EnumerationOverflowError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace graphmat
