#pragma once

#include <stdexcept>
#include <string>

namespace dafermos {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (order, mesh, list size, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A state, flux or intermediate quantity is NaN or infinite.
class NonFiniteState : public Error {
 public:
  using Error::Error;
};

/// The time integration produced an unusable state. Carries the last
/// simulation time at which the state was still admissible.
class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The characteristic equation has no unique classical solution (after
/// shock formation).
class NoClassicalSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace dafermos
