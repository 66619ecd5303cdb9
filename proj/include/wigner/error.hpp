#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wigner {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, inconsistent parameters, unsupported options.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A precondition of an operation was violated by the caller.
class ArgumentError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class DomainError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegeneracyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ContourError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class AccuracyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
  ConvergenceError(const std::string& what, std::size_t index)
      : NumericalError(what + " (index " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

}  // namespace wigner
