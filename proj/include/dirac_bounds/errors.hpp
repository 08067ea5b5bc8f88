#pragma once

#include <stdexcept>
#include <string>

namespace dirac_bounds {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested discrete eigenvalue does not exist for these parameters.
class NoDiscreteSpectrum : public Error {
 public:
  using Error::Error;
};

/// The radial Schrodinger problem has no state with the requested node count.
class NoBoundState : public Error {
 public:
  using Error::Error;
};

/// Iteration failed to converge or a bracket could not be established.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Component reconstruction would divide by a vanishing m +/- E.
class DegenerateEnergy : public Error {
 public:
  using Error::Error;
};

/// Envelope construction requested for a transformation without definite convexity.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Two potentials are not pointwise ordered, so the comparison theorem says nothing.
class NotComparable : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace dirac_bounds
