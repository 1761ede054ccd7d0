#pragma once

#include <stdexcept>
#include <string>

namespace dimmax {

// Root of the library's exception hierarchy. Every failure the library
// raises on purpose derives from this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain: bad digits, weights that are not a
// probability vector, alphabet sizes below 2, etc.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Cylinder enumeration would exceed its word budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An iterative procedure stopped without reaching its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf or a similar floating point breakdown inside an evaluator.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace dimmax
