#pragma once

#include <stdexcept>
#include <string>

namespace loopvir {

/// Base of every error the library reports. Nothing in the library aborts on
/// bad input; it throws one of these instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematically undefined request: division by zero, kappa = 0, evaluating
/// Lambda^-1 at Lambda = 0, a non-invertible series leading coefficient.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The working truncation (series order or coordinate cutoff) is too small to
/// produce an exact answer.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Two polynomials from coordinate rings with different cutoffs were combined.
class CutoffMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (scalars, loop specs, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace loopvir
