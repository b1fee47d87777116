#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppak {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or chart text. `offset()` is the byte position of the
/// offending token in the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A constructor or operation precondition was violated by its inputs
/// (wrong dimension, forbidden coordinate dependence, bad parameter).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the domain of a partial function (division by zero,
/// logarithm of a nonpositive number).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix elimination hit a pivot below the singularity tolerance.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator could not make progress.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ppak
