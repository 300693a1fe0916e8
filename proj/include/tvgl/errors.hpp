#ifndef TVGL_ERRORS_HPP
#define TVGL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tvgl {

/// Malformed or inconsistent input data (CSV parsing, ragged rows, ...).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure (non-convergence, loss of positive definiteness, ...).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tvgl

#endif
