#pragma once

#include <stdexcept>
#include <string>

namespace ritzvar {

/// Malformed or out-of-domain input (bad dimensions, non-finite entries,
/// negative entries where padding is undefined, rank deficiency).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A backend factorization failed or produced a result outside its
/// residual contract.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A theorem's hypothesis does not hold for the given data (e.g. the
/// subspace is not invariant, or the pair is not acute).
class PreconditionError : public std::domain_error {
 public:
  PreconditionError(const std::string& what, double measured)
      : std::domain_error(what), measured_(measured) {}

  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

}  // namespace ritzvar
