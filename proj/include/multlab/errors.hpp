#pragma once

#include <stdexcept>
#include <string>

namespace multlab {

// Every error raised by the library derives from this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class DegeneratePointSet : public Error {
 public:
  using Error::Error;
};

class UnreliableClustering : public Error {
 public:
  using Error::Error;
};

class NoSecondDistance : public Error {
 public:
  using Error::Error;
};

class NotConvex : public Error {
 public:
  using Error::Error;
};

class TooSmall : public Error {
 public:
  using Error::Error;
};

class AngleOutOfRange : public Error {
 public:
  using Error::Error;
};

class InfeasibleGeometry : public Error {
 public:
  using Error::Error;
};

class RetryBudgetExhausted : public Error {
 public:
  using Error::Error;
};

class RangeExceeded : public Error {
 public:
  using Error::Error;
};

class DivisibilityError : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace multlab
