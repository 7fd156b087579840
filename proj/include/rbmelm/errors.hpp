#pragma once

#include <stdexcept>
#include <string>

namespace rbmelm {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: SVD non-convergence, divergent training update.
struct NumericError : Error {
    using Error::Error;
};

/// Input data problem: missing file, malformed row, unknown label.
struct DataError : Error {
    using Error::Error;
};

/// Invalid experiment or algorithm configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace rbmelm
