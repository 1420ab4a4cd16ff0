#pragma once

#include <stdexcept>
#include <string>

namespace headpose {

/// Malformed or inconsistent input data (files, records, calibration).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: non-finite input, degenerate geometry, diverging optimization.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace headpose
