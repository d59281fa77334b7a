#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace spheredyn {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSkewSymmetric : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class CurveMismatch : public Error {
 public:
  using Error::Error;
};

/// Failure of a numerical evaluation. Carries the simulation time when the
/// failure happened inside an integration.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what, std::optional<double> time = std::nullopt)
      : Error(what), time_(time) {}

  std::optional<double> time() const { return time_; }

 private:
  std::optional<double> time_;
};

class SingularInertia : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// A state violates the unit-norm or tangency invariants of (S^2)^n.
class TangencyViolation : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class DivergenceDetected : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace spheredyn
