#pragma once

#include <stdexcept>
#include <string>

namespace roadstate {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An input lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A time step is too large for the stability/ordering bound of a scheme.
class StepSizeError : public Error {
public:
  using Error::Error;
};

/// A configuration value violates its documented constraints.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A computation produced a non-finite or otherwise degenerate value.
class NumericError : public Error {
public:
  using Error::Error;
};

/// File contents do not match the expected format or shape.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace roadstate
