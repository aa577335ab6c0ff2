#pragma once

#include <stdexcept>
#include <string>

namespace betatest {

/// Input data violates a basic contract (non-finite entries, ragged CSV, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A sample is too small to center / invert (n < 2, or n < 3 for leave-one-out).
struct DegenerateSampleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dimension bounds violated, e.g. p > n1 + n2 - 2.
struct DesignError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The pooled pencil S1 + (n2/n1) S2 is numerically singular.
struct SingularPencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Kurtosis inputs make a variance formula non-positive.
struct InvalidKurtosisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The fourth-moment estimator is undefined (p >= n1 + n2 - 1).
struct EstimatorUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Limiting-spectrum support collapsed (h^2 <= 0) or a scaling is vacuous.
struct DegenerateDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrand returned a non-finite value at a quadrature node.
struct IntegrandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace betatest
