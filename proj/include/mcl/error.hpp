#pragma once

#include <stdexcept>
#include <string>

namespace mcl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on a constructor or operation argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Time step exceeds the stability limit. Carries the admissible step.
class CflError : public Error {
 public:
  CflError(const std::string& what, double admissible_dt)
      : Error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// A numerical procedure (root find, quadrature, inversion) failed, or a
/// state left the physical/invariant region.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcl
