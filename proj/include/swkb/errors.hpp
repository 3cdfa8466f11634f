#pragma once

#include <stdexcept>
#include <string>

namespace swkb {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// E < V(x) where a real local momentum is required.
class ForbiddenRegionError : public Error {
 public:
  using Error::Error;
};

class NearTurningPointError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

// The well does not have the turning-point layout an operation needs.
class TopologyError : public Error {
 public:
  using Error::Error;
};

class NoBoundStateError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class StepTooCoarseError : public Error {
 public:
  using Error::Error;
};

class DegenerateTurningPointError : public Error {
 public:
  using Error::Error;
};

// Point lies in a connection region; the uniform (Airy) form applies there.
class UseUniformError : public Error {
 public:
  using Error::Error;
};

// Argument outside the supported range of a special function. exponent_scale
// is the size of the exponential factor exp(±exponent_scale) that would apply.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double exponent_scale)
      : Error(what), exponent_scale_(exponent_scale) {}
  double exponent_scale() const noexcept { return exponent_scale_; }

 private:
  double exponent_scale_;
};

}  // namespace swkb
