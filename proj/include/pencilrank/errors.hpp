#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pencilrank {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class CharacteristicTooSmall : public Error {
 public:
  using Error::Error;
};

class DegreeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ZeroModule : public Error {
 public:
  using Error::Error;
};

class NonSquare : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A certificate failed exact re-verification. Indicates a bug, never a verdict.
class InternalError : public Error {
 public:
  using Error::Error;
};

// A document is well-formed JSON but does not match the expected layout,
// or could not be read.
class FormatError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pencilrank
