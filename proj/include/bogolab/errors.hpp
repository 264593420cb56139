#pragma once

#include <stdexcept>
#include <string>

namespace bogolab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration input (bad key, bad value, violated constraint).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A requested computation would exceed the configured size limits.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver failed to reach its tolerance within its budget.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what, double best_residual = 0.0)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// The quadratic fluctuation problem has no stable quasiparticle solution
/// (complex or negative-norm modes).
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bogolab
