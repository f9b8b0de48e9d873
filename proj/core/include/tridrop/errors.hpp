#pragma once

#include <stdexcept>
#include <string>

namespace tridrop {

// Error taxonomy; the CLI maps each class to a distinct exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible matrix/vector shapes.
struct DimensionError : Error {
    using Error::Error;
};

// Index or width outside its valid interval.
struct RangeError : Error {
    using Error::Error;
};

// Malformed file contents (bad magic, truncation, out-of-range fields).
struct FormatError : Error {
    using Error::Error;
};

// Invalid configuration (flags, config file, width lists).
struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Non-finite values where finite ones are required (diverging loss, NaN action).
struct NumericError : Error {
    using Error::Error;
};

// An internal consistency check failed (e.g. pruning equivalence); indicates a bug.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace tridrop
