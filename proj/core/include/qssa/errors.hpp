#pragma once

#include <stdexcept>
#include <string>

namespace qssa {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A formula is evaluated outside the domain where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The step size collapsed below what double precision can resolve.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// The step budget was exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The integration horizon ended before the requested event happened.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line or sweep request (unknown names, malformed files).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qssa
