#pragma once

#include <stdexcept>
#include <string>

namespace rough {

// Shape/precondition violations on inputs (dimension mismatch, bad exponent, ...).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Regularity preconditions (Young exponent condition, admissible p bands, ...).
struct RegularityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Solver failure: non-convergence after the halving budget, NaN/overflow.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Covariance matrix not positive semidefinite even after jitter.
struct CovarianceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rough
