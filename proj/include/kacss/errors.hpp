#pragma once

#include <stdexcept>
#include <string>

namespace kacss {

/// Malformed instance or arc-set text.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A combinatorial guarantee the algorithms rely on did not hold. Always a bug
/// (or a violated precondition that slipped through), never a user error.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kacss
