#pragma once

#include <stdexcept>
#include <string>

namespace modweyl {

/// Default residual tolerance for every numerical check in the library.
inline constexpr double kDefaultTol = 1e-10;

/// Shape or membership mismatch: an element from the wrong group, a matrix of
/// the wrong size, a vector from a different module.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data that is well-formed but violates a mathematical requirement
/// (a non-unitary action generator, a representation that fails an axiom).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modweyl
