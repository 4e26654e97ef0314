#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gradflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgumentError : Error {
  using Error::Error;
};

// Bad user-supplied data (e.g. a negative initial density).
struct InvalidInputError : Error {
  using Error::Error;
};

struct EmptyEnsembleError : Error {
  using Error::Error;
};

// Evaluation left the numerical domain (log of a nonpositive density, ...).
struct NumericalDomainError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

}  // namespace gradflow
