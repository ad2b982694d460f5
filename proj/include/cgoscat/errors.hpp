#pragma once

#include <stdexcept>
#include <string>

namespace cgoscat {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid grid construction (odd N, non-orthonormal frame, ...).
struct GridError : Error {
    using Error::Error;
};

// Field file problems: bad magic, version mismatch, truncated payload.
struct IoError : Error {
    using Error::Error;
};

// Operation requires Im z != 0 (Faddeev multiplier would hit its zero set).
struct RealZError : Error {
    using Error::Error;
};

// Iterative solver exhausted its iteration budget. For CGO solves this is
// the numerical signature of an exceptional parameter point, so it is
// surfaced to the caller instead of being retried.
struct NonConvergenceError : Error {
    int iterations;
    double residual;
    NonConvergenceError(const std::string& msg, int iters, double resid)
        : Error(msg), iterations(iters), residual(resid) {}
};

// t below (or on) the admissibility boundary of the momentum family.
struct SubcriticalTError : Error {
    using Error::Error;
};

// Unknown closed-form descriptor kind.
struct DescriptorError : Error {
    using Error::Error;
};

// Scenario / configuration problems (unknown keys, missing blocks, bad values).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace cgoscat
