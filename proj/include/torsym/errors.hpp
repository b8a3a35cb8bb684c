#pragma once

#include <stdexcept>
#include <string>

namespace torsym {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid model parameters or an unsupported model configuration.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Malformed user input (files, configs, flags).
class InputError : public Error {
public:
    using Error::Error;
};

/// Numerical degeneracy: a singular information matrix, an unidentifiable
/// center, or a sampler that cannot make progress.
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace torsym
