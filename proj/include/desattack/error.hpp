#pragma once

#include <stdexcept>
#include <string>

namespace desattack {

/// Raised when user-supplied identifiers, documents or arguments are invalid.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller breaks an operation's precondition (e.g. an attack
/// strategy tampering with a non-vulnerable event).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace desattack
