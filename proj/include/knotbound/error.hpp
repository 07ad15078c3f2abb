#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knotbound {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure (d^2 != 0, non-integral grading, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A configured resource limit was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Contradictory facts or bounds.
class ContradictionError : public Error {
 public:
  using Error::Error;
};

}  // namespace knotbound
