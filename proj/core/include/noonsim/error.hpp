#pragma once

#include <stdexcept>
#include <string>

namespace noonsim {

/// Process exit status associated with each error family.
enum class ExitCode : int {
  success = 0,
  config = 2,
  numerical = 3,
  io = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Invalid configuration value, unknown or duplicate key, or violated type invariant.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::config, what) {}
};

/// A geometric precondition failed (packet outside grid, slab outside domain, ...).
class GeometryError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DimensionMismatchError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class OracleSizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

class NotPositiveSemidefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptyProjectionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CaptureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Coincidence numerator is finite while a detector denominator vanishes.
class IndeterminateCfError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CalibrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoFringeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoTransitionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::io, what) {}
};

}  // namespace noonsim
