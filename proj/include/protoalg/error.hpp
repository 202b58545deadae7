#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protoalg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL input. Carries a 1-based source position.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A term or identity that does not fit the signature it is used with.
class MalformedTerm : public Error {
public:
  using Error::Error;
};

/// Work estimate above the configured budget; the caller decides how to degrade.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// An argument outside the documented domain of an operation.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The input algebra does not satisfy a condition the operation requires.
class PreconditionFailed : public Error {
public:
  using Error::Error;
};

/// A table-checked result that contradicts a proven statement. Never expected.
class VerificationFailure : public Error {
public:
  using Error::Error;
};

}  // namespace protoalg
