#pragma once

#include <stdexcept>
#include <string>

namespace lienard {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with a model definition: unknown builtin, missing parameter,
/// malformed segment tiling.
class ModelError : public Error {
 public:
  using Error::Error;
};

class LookupError : public ModelError {
 public:
  using ModelError::ModelError;
};

class ConfigError : public ModelError {
 public:
  using ModelError::ModelError;
};

class StructuralError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Evaluation requested outside (-d, d).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quadrature non-convergence, step-size underflow and similar.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A root-bracketing request whose bracket holds no sign change.
class NoRootError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Cycle analysis could not complete (no return to the axis, unresolved grid).
class AnalysisError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lienard
