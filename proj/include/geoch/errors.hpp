#pragma once

#include <stdexcept>
#include <string>

namespace geoch {

/// Raised when an input violates an operation's precondition
/// (bad grid size, unsupported derivative order, bad coefficient, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields (or a field and a state) live on different grids.
class GridMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A field sample became NaN or infinite.
class NonFiniteValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The discrete particle map stopped being an orientation-preserving
/// circle diffeomorphism (eta_X <= 0 somewhere, or samples out of order).
class DiffeoLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geoch
