#pragma once

#include <stdexcept>
#include <string>

namespace tsurf {

// Bad input: violated precondition of a public operation.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A post-condition or self-check failed; indicates a bug or a broken invariant.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// A configured size cap was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tsurf
