#pragma once

#include <stdexcept>
#include <string>

namespace crnkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; column 0 means the
/// whole line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) +
              (column > 0 ? ", column " + std::to_string(column) : std::string()) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Structurally well-formed input that violates a model invariant
/// (self-loop, duplicate edge, non-positive rate, isolated vertex, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (non-positive state, affinely
/// dependent class handed to the rate solver, vertex cap exceeded, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A proven invariant failed to hold. Reaching this is a bug or a
/// counterexample, never an expected outcome.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace crnkit
