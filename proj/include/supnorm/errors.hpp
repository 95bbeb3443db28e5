#pragma once

#include <stdexcept>
#include <string>

namespace supnorm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input or a mathematical precondition that does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivisionByZero : public DomainError {
 public:
  using DomainError::DomainError;
};

class ZeroKernel : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoPointFound : public DomainError {
 public:
  using DomainError::DomainError;
};

// A configured budget (nodes, entry bound, precision cap) was exhausted.
// Results are never silently truncated; this is raised instead.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed. Indicates a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace supnorm
