#pragma once

#include <stdexcept>
#include <string>

namespace dsmimo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates an operation's precondition
/// (bad dimensions, non-Hermitian input, empty spectra, p outside (0,1), ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation produced a result that contradicts a guaranteed property,
/// e.g. no admissible cubic root or a variance guard tripping. Signals a
/// solver defect rather than bad input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dsmimo
