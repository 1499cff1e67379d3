#pragma once

#include <stdexcept>
#include <string>

namespace kt {

// Rejected input or violated precondition.  The CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// square_cofactor called with a class that does not match the polynomial.
// Kept distinct from plain validation so callers can tell a wrong *claim*
// from a malformed input.
class class_mismatch_error : public validation_error {
 public:
  using validation_error::validation_error;
};

// A structural expectation inside the library failed (e.g. an asymmetric
// G' Gram).  The CLI maps this to exit code 3.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kt
