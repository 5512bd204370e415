#ifndef WEDGELAB_ERRORS_HPP
#define WEDGELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wedgelab {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument combination (mismatched algebras, out-of-domain inputs).
struct DomainError : Error {
  using Error::Error;
};

/// A stated precondition of an operation is violated.
struct PreconditionError : Error {
  using Error::Error;
};

/// The requested construction is not available for this input
/// (e.g. transpose Cartan involution on an algebra whose span is not
/// closed under x -> -x^T, or complex flow time on a real-only model).
struct UnsupportedError : Error {
  using Error::Error;
};

/// Numerical failure (solver did not converge, singular operator).
struct NumericError : Error {
  using Error::Error;
};

}  // namespace wedgelab

#endif
