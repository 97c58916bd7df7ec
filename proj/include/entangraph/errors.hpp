#pragma once

#include <stdexcept>

namespace entangraph {

// Every failure raised by the library derives from Error; the CLI maps the
// concrete type onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total dimension would exceed the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A party label is unknown or duplicated.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Malformed argument (empty subset, bad range, unparsable text).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (non-Hermitian, non-PSD, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace entangraph
