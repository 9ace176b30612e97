#pragma once

#include <stdexcept>

namespace hsc {

/// Input outside the mathematical domain of an operation (n <= 0, entry 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured cap (group order, tuple length, recursion depth) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller misuse: unknown names, mismatched parent groups, malformed files.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hsc
