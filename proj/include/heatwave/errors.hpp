#pragma once

#include <stdexcept>
#include <string>

namespace heatwave {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on parameters or inputs was violated.
struct DomainError : Error {
    using Error::Error;
};

/// An iteration exhausted its budget without meeting its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// The iteration moved away from a solution (growing residual, runaway values).
struct DivergenceError : Error {
    using Error::Error;
};

/// Nonlinear terms overflowed; blow-up is imminent.
struct OverflowError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace heatwave
