#pragma once

#include <stdexcept>
#include <string>

namespace sminlab {

// Bad arguments: dimension mismatch, out-of-range index, malformed spec.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds an exhaustive-search or enumeration bound.
class UnsupportedSize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hypothesis does not hold for the supplied instance. Kept distinct
// from a failed conclusion so that suites can tell the two apart.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A structure hit a case the construction leaves undefined (e.g. a zero
// class count under alpha/#eta).
class DegenerateStructure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sminlab
