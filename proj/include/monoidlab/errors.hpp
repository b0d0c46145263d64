#pragma once

#include <stdexcept>
#include <string>

namespace monoidlab {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value or operation description violates a construction invariant.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// A table-backed operation was evaluated outside its window.
class OutOfWindow : public Error {
 public:
  using Error::Error;
};

// An evaluation or search exceeded its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// materialize_table found an entry above the requested bound.
// Coordinates are 1-based; the value is carried as a decimal string so the
// error type does not depend on the big-integer layer.
class ValueBoundExceeded : public Error {
 public:
  ValueBoundExceeded(int a, int b, std::string value)
      : Error("value bound exceeded at (" + std::to_string(a) + "," +
              std::to_string(b) + "): " + value),
        a_(a),
        b_(b),
        value_(std::move(value)) {}

  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  const std::string& value() const noexcept { return value_; }

 private:
  int a_;
  int b_;
  std::string value_;
};

// Operation requires a closed table (all entries within the window).
class NotClosed : public Error {
 public:
  using Error::Error;
};

// A growth-exponent grid was rejected (too short, not strictly increasing).
class NonPositiveGrid : public Error {
 public:
  using Error::Error;
};

// Command line was malformed.
class UsageError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace monoidlab
