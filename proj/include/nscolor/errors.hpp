#pragma once

#include <stdexcept>
#include <string>

namespace nscolor {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unknown formula id or registry key.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Known formula id with no implementation (appearance-model rows).
class NotImplementedError : public Error {
 public:
  using Error::Error;
};

/// Fitting failed: too few points, degenerate geometry, unidentifiable model.
class FitError : public Error {
 public:
  using Error::Error;
};

/// The optimizer could not evaluate the objective anywhere it looked.
class OptimizationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A file does not match the expected column layout or value set.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace nscolor
