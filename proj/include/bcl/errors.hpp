#pragma once

#include <stdexcept>
#include <string>

namespace bcl {

// Base class for all library errors. Subclasses map to distinct CLI exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the operation.
struct OutOfRange : Error {
  using Error::Error;
};

struct NonPositiveArgument : OutOfRange {
  using OutOfRange::OutOfRange;
};

// A configured enumeration or support-size cap was exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// A comparison or floor could not be certified at the precision cap.
struct UndecidableAtPrecision : Error {
  using Error::Error;
};

// Every polynomial in the input set is zero.
struct AllZero : Error {
  using Error::Error;
};

// A stated precondition of the operation does not hold (or cannot be certified).
struct PreconditionUnmet : Error {
  using Error::Error;
};

// A guaranteed root was not found within the asserted bound; indicates a bug
// or an uncertified precondition.
struct NoRootInRange : Error {
  using Error::Error;
};

// Atom positions cannot be certified-ordered against the requested scale.
struct ScaleNotRational : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

}  // namespace bcl
