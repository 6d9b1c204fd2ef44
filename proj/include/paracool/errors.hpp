#pragma once

#include <stdexcept>
#include <string>

namespace paracool {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates the documented domain of an operation.
class InvalidParameter : public Error {
  public:
    using Error::Error;
};

/// Adaptive integration could not continue (step-size underflow or step budget exhausted).
class IntegrationFailure : public Error {
  public:
    IntegrationFailure(const std::string &what, double last_good_time)
        : Error(what), last_good_time_(last_good_time) {}
    double last_good_time() const noexcept { return last_good_time_; }

  private:
    double last_good_time_;
};

/// Truncated Fock-space representation lost too much probability into its top levels.
class TruncationError : public Error {
  public:
    TruncationError(const std::string &what, double time) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

  private:
    double time_;
};

/// Root bracketing or series/quadrature convergence failed.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Malformed or out-of-range run configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace paracool
