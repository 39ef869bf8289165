#pragma once

#include <stdexcept>
#include <string>

namespace nzflow {

/// Base for recoverable failures reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input does not satisfy the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured desk-scale cap (cycle rank, edge count, search budget) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A guarantee that should hold by construction failed; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nzflow
