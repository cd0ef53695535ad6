#pragma once

#include <stdexcept>

namespace ntf {

// Model or data fails an admissibility condition (velocity/kernel assumptions,
// delay-parameter threshold, initial-data constraints). CLI exit code 2.
struct AdmissibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runtime numerical failure: CFL violation, lost contraction, positivity
// breach, sampling past the stored time frontier. CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem / serialization failure. CLI exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ntf
