#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objects live on different spaces, or a reference does not resolve.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An enumeration guard (support size, algebra size, partition count) tripped.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Exact evaluation failed (division by zero inside div).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold
/// (argument not a fragment, operator not atomic, not positive, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace oac
