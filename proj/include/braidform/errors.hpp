#pragma once

#include <stdexcept>
#include <string>

namespace braidform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A dense or enumerative computation would exceed its configured size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// A numerical certificate failed. This signals a solver or input defect,
/// not a malformed request.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace braidform
