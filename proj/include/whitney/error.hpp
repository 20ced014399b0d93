#pragma once

#include <stdexcept>
#include <string>

namespace whitney {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The function lacks a capability the operation needs (e.g. analytic derivatives).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An operator was requested outside the region where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace whitney
