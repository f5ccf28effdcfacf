#pragma once

#include <stdexcept>
#include <string>

namespace orbitrep {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, JSON documents, matrices).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A MarkovMap whose partition or branch list is structurally inconsistent.
class InvalidMapError : public Error {
 public:
  using Error::Error;
};

class OutsideAmbientError : public Error {
 public:
  using Error::Error;
};

class NotAnEscapePointError : public Error {
 public:
  using Error::Error;
};

/// The orbit of the requested point hits a partition point, so no orbit
/// representation is attached to it.
class BoundaryOrbitError : public Error {
 public:
  using Error::Error;
};

class NotAdmissibleError : public Error {
 public:
  using Error::Error;
};

class BasisMismatchError : public Error {
 public:
  using Error::Error;
};

class InconsistentInputsError : public Error {
 public:
  using Error::Error;
};

class DepthExceedsTreeError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class SnapFailureError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitrep
