#pragma once

#include <stdexcept>
#include <string>

namespace bpcr {

// Bad or unusable input data (malformed file, NaN, too few points).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientDataError : public InputError {
 public:
  using InputError::InputError;
};

// A computed result broke a normalization or structural invariant.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bpcr
