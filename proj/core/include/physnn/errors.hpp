#pragma once

#include <stdexcept>
#include <string>

namespace physnn {

/// A function evaluation produced a non-finite value or was called outside
/// its supported family.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix that must be positive semi-definite failed a jittered Cholesky
/// factorization even at the maximum jitter level.
class NotPsdError : public std::runtime_error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue_estimate)
      : std::runtime_error(what), min_eigenvalue(min_eigenvalue_estimate) {}
  double min_eigenvalue;
};

/// Training produced a non-finite loss.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int at_iteration)
      : std::runtime_error(what), iteration(at_iteration) {}
  int iteration;
};

/// Invalid configuration, dimension mismatch, or malformed input document.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace physnn
