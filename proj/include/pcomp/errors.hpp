#pragma once

#include <stdexcept>
#include <string>

namespace pcomp {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (point outside the window,
// s not below t, mismatched windows, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two points share an x or y coordinate, or a point lies on an axis.
class StrictSimplicityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An internal identity did not hold. Always an implementation bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A measure produced a negative rectangle mass or failed the continuity screen.
class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

// A candidate avoidance function is not the avoidance function of a
// single line process (its negative log is not a continuous measure).
class InvalidAvoidance : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Cumulative hazard is infinite at the evaluation point (F reached one).
class SingularHazard : public Error {
 public:
  using Error::Error;
};

// A compensator integrand denominator vanishes inside the integration region.
class SingularIntegral : public Error {
 public:
  using Error::Error;
};

// A test functional tried to read outside its region restriction.
class MeasurabilityViolation : public Error {
 public:
  using Error::Error;
};

// The model has no analytic conditional hazard provider.
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcomp
