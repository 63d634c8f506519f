#pragma once

#include <stdexcept>
#include <string>

namespace apolar {

// Base of every exception thrown by the library. The CLI maps the concrete
// subclasses to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace apolar
