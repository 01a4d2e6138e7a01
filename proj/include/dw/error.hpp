#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Two field elements (or polynomials) live in different quadratic fields.
class RadicandMismatch : public Error {
 public:
  RadicandMismatch(long long d1, long long d2)
      : Error("radicand mismatch: sqrt(" + std::to_string(d1) + ") vs sqrt(" +
              std::to_string(d2) + ")") {}
};

class RegistryMismatch : public Error {
 public:
  RegistryMismatch() : Error("polynomials belong to different variable registries") {}
};

/// Textual input did not conform to the grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A mathematical precondition failed (degenerate input, wrong shape, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dw
