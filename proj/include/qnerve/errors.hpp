#pragma once

#include <stdexcept>
#include <string>

namespace qnerve {

/// Malformed or contract-violating input. The message names the offending
/// entity (vertex, letter, flag, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// The tuple nerve grew past the configured hard limit.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnerve
