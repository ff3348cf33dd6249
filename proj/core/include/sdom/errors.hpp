#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sdom {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (invalid parameters, p outside (0,1), c <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// pdf requested from a law without an analytic density.
class NoDensity : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

/// Weights that are negative, non-finite, or fail to sum to the required total.
class WeightError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NotMajorized : public Error {
 public:
  using Error::Error;
};

/// A premise of a closure constructor failed validation. The message names
/// the premise and the grid point at which it failed.
class ConditionFailed : public Error {
 public:
  ConditionFailed(std::string premise, double witness_x, const std::string& detail)
      : Error("condition failed: " + premise + " at x=" + std::to_string(witness_x) +
              (detail.empty() ? "" : " (" + detail + ")")),
        premise_(std::move(premise)),
        witness_x_(witness_x) {}

  const std::string& premise() const noexcept { return premise_; }
  double witness_x() const noexcept { return witness_x_; }

 private:
  std::string premise_;
  double witness_x_;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed distribution spec or other user input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdom
