#pragma once

#include <stdexcept>
#include <string>

namespace brf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument values (out-of-range parameters, malformed input).
class ParameterError : public Error {
public:
  explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// The operation's structural preconditions are not met by the given space
/// (e.g. non-scalar Casimir where a scalar one is required).
class UnsupportedSpaceError : public Error {
public:
  explicit UnsupportedSpaceError(const std::string& msg) : Error(msg) {}
};

/// Numerical process failed (no bracket, divergence, inexact square root
/// in rational mode, singular system).
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

/// A computed quantity contradicts a certified expectation.
class VerificationError : public Error {
public:
  explicit VerificationError(const std::string& msg) : Error(msg) {}
};

}  // namespace brf
