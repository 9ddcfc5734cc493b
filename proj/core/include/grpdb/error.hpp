#pragma once

#include <stdexcept>
#include <string>

namespace grpdb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a structural precondition (degree mismatch, broken invariant).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An element or subgroup is not contained in the group it was checked against.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size or time budget was exceeded; the caller omits the result.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        message_(what),
        line_(line),
        column_(column) {}

  /// The diagnostic without the location suffix.
  const std::string& message() const noexcept { return message_; }

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

}  // namespace grpdb
