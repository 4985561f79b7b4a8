#pragma once

#include <stdexcept>
#include <string>

namespace hyperradial {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid dimension, angular momentum, grid or other argument.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Potential could not be evaluated (overflow or NaN).
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Analytic and sampled origin classification disagree.
class IndeterminateClass : public Error {
public:
    using Error::Error;
};

/// The additional near-origin branch was requested where it is not admissible.
class BranchNotAllowed : public Error {
public:
    using Error::Error;
};

class NoBoundState : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class ZeroNorm : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Malformed problem file or command-line input.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace hyperradial
