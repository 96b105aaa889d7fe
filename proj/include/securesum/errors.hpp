#pragma once

#include <concepts>
#include <stdexcept>
#include <string>

namespace securesum {

/// A caller broke an operation's precondition (dimension mismatch, value out of range).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested object does not fit the configured size guard (leader table, enumeration).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Bad user configuration: unknown protocol id, unknown variable name, malformed input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool condition, const char* what) {
  if (!condition) throw ContractViolation(what);
}

/// Builds the message only on failure.
template <std::invocable F>
void require(bool condition, F&& describe) {
  if (!condition) throw ContractViolation(std::string(describe()));
}

}  // namespace detail
}  // namespace securesum
