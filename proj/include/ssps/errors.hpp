#pragma once

#include <stdexcept>

namespace ssps {

/// Argument outside the admissible set (modulus out of range, state left D).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The modulus equation has no root for the requested feedback strength.
struct NoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A routine that presumes an odd nonlinearity received a non-odd one.
struct OddnessError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The delay simulator exceeded its divergence bound.
struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A monotonicity precondition of a root solve failed on its check grid.
struct MonotonicityError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Two independent expressions for the same constructed quantity disagree.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace ssps
