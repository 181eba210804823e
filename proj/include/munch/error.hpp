#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace munch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values from two different semiring instances met in one operation.
class InstanceMismatch : public Error {
 public:
  using Error::Error;
};

// An evaluation point does not bind a variable that occurs in the input.
class MissingBinding : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace munch
