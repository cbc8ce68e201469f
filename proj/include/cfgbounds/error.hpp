#pragma once

#include <stdexcept>
#include <string>

namespace cfgbounds {

/// Input lies outside the domain an operation is defined on (e.g. evaluating
/// a piecewise function past its right endpoint, or mismatched domains).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller-supplied argument violates a precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is valid but too large for the exact algorithm (exponential
/// enumeration caps).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Iterative numerics failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructive argument produced an object that fails its own check.
class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfgbounds
