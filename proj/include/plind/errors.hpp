#pragma once

#include <stdexcept>
#include <string>

namespace plind {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative scheme exhausted its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Sample moments with mean^2 <= variance: the moment estimators do not exist.
class DegenerateSample : public Error {
public:
    using Error::Error;
};

/// Covariance matrix too ill-conditioned to invert.
class SingularCovariance : public Error {
public:
    using Error::Error;
};

/// A simulation configuration violates its invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A closed-form value exceeds the representable floating-point range.
class OverflowError : public Error {
public:
    using Error::Error;
};

} // namespace plind
