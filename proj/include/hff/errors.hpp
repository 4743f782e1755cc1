#pragma once

#include <stdexcept>
#include <string>

namespace hff {

// Argument has the wrong size, qubit count or shape.
class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A sector or state exceeds the configured dense-diagonalization cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation's stated precondition does not hold (e.g. non-orthogonal states).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scalar argument outside the mathematical domain of the function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inconsistent experiment or feature-map configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hff
