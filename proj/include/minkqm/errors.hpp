#pragma once

#include <stdexcept>
#include <string>

namespace minkqm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A continued-fraction expansion hit a zero denominator while being evaluated.
class MalformedExpansion : public Error {
 public:
  using Error::Error;
};

/// A digit stream ran out before the requested prefix length was produced.
class NeedsMoreDigits : public Error {
 public:
  using Error::Error;
};

/// A desk-scale cap (enumeration size, matrix dimension, recursion depth) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// The requested accuracy could not be certified within the configured caps.
class PrecisionUnreachable : public Error {
 public:
  using Error::Error;
};

}  // namespace minkqm
