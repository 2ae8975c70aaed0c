#pragma once

#include <stdexcept>
#include <string>

namespace filippov {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (Lie derivative order, chart angle, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The input state violates an operation's precondition, e.g. asking for the
/// sliding field at a sewing point.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed user input: bad flags, bad system files, wrong parameter sets.
class ArgumentError : public Error {
public:
    using Error::Error;
};

class UnsupportedKindError : public Error {
public:
    using Error::Error;
};

/// Numerical failure (step-size collapse, non-convergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace filippov
