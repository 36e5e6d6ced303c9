#pragma once

#include <stdexcept>

namespace smoothtrim {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside its domain (bad trimming fraction, level, grid, input file).
struct ParameterError : Error {
    using Error::Error;
};

/// Structurally valid input that leaves nothing to work with
/// (all-zero weights, zero variance on the trimmed range).
struct DegenerateInput : Error {
    using Error::Error;
};

/// The profiling equation has no root: mu lies outside the convex hull
/// of the weighted trimmed values.
struct NoRootError : Error {
    using Error::Error;
};

/// A numeric routine could not reach its tolerance.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace smoothtrim
