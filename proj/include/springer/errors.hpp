#pragma once

#include <stdexcept>
#include <string>

namespace springer {

/** Base class for every error raised by the library. */
class SpringerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** An answer depended on coefficients at or past a series horizon. */
class PrecisionError : public SpringerError {
 public:
  using SpringerError::SpringerError;
};

/** Malformed or mathematically invalid input (field mismatch, non-regular gamma, ...). */
class InputError : public SpringerError {
 public:
  using SpringerError::SpringerError;
};

/** A coweight or parameter vector does not have the shape an operation requires. */
class ShapeError : public InputError {
 public:
  using InputError::InputError;
};

/** An enumeration would exceed the configured point-test budget. */
class BudgetError : public SpringerError {
 public:
  using SpringerError::SpringerError;
};

}  // namespace springer
