#pragma once

#include <stdexcept>
#include <string>

namespace torcoh {

// Precondition or domain violation (bad dimensions, zero denominators,
// non-finite input). Never used for obstruction verdicts, which are values.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Fourier support does not fit in the requested sampling grid.
class AliasingError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A truncated sum or truncated support would silently drop mass.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_bound)
      : std::runtime_error(what), tail_bound_(tail_bound) {}
  double tail_bound() const noexcept { return tail_bound_; }

 private:
  double tail_bound_;
};

// Numerical breakdown that the caller cannot fix by changing inputs
// (overflow despite renormalisation, non-real series residue, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torcoh
