#pragma once

#include <stdexcept>
#include <string>

namespace surfmmp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or unmet precondition of an operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A divisor or point refers to a curve that the configuration lacks.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// contract_extremal was asked to contract something it cannot.
class ContractionRefused : public Error {
 public:
  using Error::Error;
};

/// The declared curve basis does not separate vertical curve classes.
class BasisInsufficiency : public Error {
 public:
  using Error::Error;
};

/// Input that passes schema checks but is geometrically inconsistent
/// (for example a relative cone that contains a line).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A theorem-level guarantee failed. Either the input is not what it claims
/// to be or the library has a bug; callers surface this with a distinct
/// exit status.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace surfmmp
