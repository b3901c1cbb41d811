#pragma once

#include <stdexcept>
#include <string>

namespace wachlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range ring parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

/// A character value that is not a p-adic unit.
class InvalidCharacterValue : public Error {
 public:
  using Error::Error;
};

/// Frobenius with eigenvalues outside Q, or other eigenstructure the
/// exact-rational layer cannot handle.
class UnsupportedEigenstructure : public Error {
 public:
  using Error::Error;
};

class NotUnipotent : public Error {
 public:
  using Error::Error;
};

class NotUnipotentModX : public NotUnipotent {
 public:
  using NotUnipotent::NotUnipotent;
};

/// A computation needed more p-adic digits than the ring carries.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a named structural invariant.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace wachlab
