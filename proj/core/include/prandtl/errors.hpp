#pragma once

#include <stdexcept>
#include <string>

namespace prandtl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (t, x) or (ξ, η) outside the model domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input data violate positivity / monotonicity / boundary requirements.
class DataError : public Error {
public:
    using Error::Error;
};

class MonotonicityError : public DataError {
public:
    using DataError::DataError;
};

/// Profile does not reach the outer velocity inside the truncated domain.
class TruncationError : public DataError {
public:
    using DataError::DataError;
};

/// Crocco profile with a non-positive interior shear.
class InvertibilityError : public DataError {
public:
    using DataError::DataError;
};

/// Linear solve broke down.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Non-finite value appeared while time stepping.
class InstabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An operation was called on a model that does not satisfy its precondition
/// (e.g. Lyapunov constants for a non-adverse pressure gradient).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Bad or inconsistent run configuration.  The message names the key.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Formats "<what> at <where>" style messages with numeric context.
std::string describe_node(const char* what, int i, int j, double value);

}  // namespace prandtl
