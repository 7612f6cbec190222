#pragma once

#include <stdexcept>

namespace densicohom {

/// Precondition violation on a public entry point (bad dimension, slot, grammar...).
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Lowering a multi-index slot that is already zero.
struct not_lowerable : std::domain_error {
  using std::domain_error::domain_error;
};

/// Coefficient data that fails the 1-cocycle constraints.
struct not_a_cocycle : std::domain_error {
  using std::domain_error::domain_error;
};

/// Operation applied outside the parameter case it is defined for.
struct wrong_case : std::domain_error {
  using std::domain_error::domain_error;
};

} // namespace densicohom
