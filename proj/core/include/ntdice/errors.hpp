#pragma once

#include <stdexcept>
#include <string>

namespace ntdice {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (illegal character, bad JSON shape).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A value violates a type invariant (e.g. a dice set that does not partition 1..3n).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the given arguments.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rewrite move does not fit the word it is applied to.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A cached file decoded cleanly but its content fails re-verification.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace ntdice
