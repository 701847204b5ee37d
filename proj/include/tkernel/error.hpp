#pragma once

#include <stdexcept>
#include <string>

namespace tkernel {

// Integer range exceeded in a dimension or multinomial count.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Harmonic degree above the configured cap.
class DegreeLimitError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input point is off the unit sphere, or an inner product is outside [-1, 1].
class InvalidSample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedClosedForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stored-sample engine asked to hold more samples than its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fourier cutoff too small for the requested tail tolerance.
class TailToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tkernel
