#pragma once

#include <stdexcept>
#include <string>

namespace gammagen {

/// Input outside an operation's domain (bad level, non-unit, det != 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hypotheses of a theorem-level check are violated; the check makes no claim.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input (matrix literals, words, JSON payloads).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gammagen
