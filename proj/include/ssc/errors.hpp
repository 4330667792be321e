#pragma once

#include <stdexcept>
#include <string>

namespace ssc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation could not be carried out (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ssc
