#pragma once

#include <stdexcept>
#include <string>

namespace snforge {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad literal, wrong shape, unknown field in a document.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical data failed (division by zero,
/// mismatched rings, non-associative table, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is outside what the library implements.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An internal consistency assertion failed. Always a bug or an input that
/// violates a documented contract in a way the earlier checks did not catch.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace snforge
