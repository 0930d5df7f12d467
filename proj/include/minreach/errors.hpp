#pragma once

#include <stdexcept>
#include <string>

namespace minreach {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range arguments (bad index, non-finite entry, t1 <= t0).
class InputError : public Error {
 public:
  using Error::Error;
};

// Vector or matrix shapes that do not agree.
class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

// Exhaustive routines refuse instances above the brute-force cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// The operation is not defined for this kind of system (e.g. controllability
// of an output-weighted system).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// No actuator set reaches the requested residual, even with every state
// actuated. Only possible for output-weighted systems or through round-off.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double residual_sq)
      : Error(what), residual_sq_(residual_sq) {}

  double residual_sq() const { return residual_sq_; }

 private:
  double residual_sq_;
};

}  // namespace minreach
