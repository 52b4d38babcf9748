#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace secview {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
    if (line == 0) return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that violates a semantic rule: unknown relation, arity or
// sort mismatch, unsafe variable, bad cell address, non-correlated instances.
class SemanticError : public Error {
public:
  using Error::Error;
};

// A configured search or enumeration bound was exceeded.
class BoundExceeded : public Error {
public:
  using Error::Error;
};

// Two routes that must agree did not.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace secview
