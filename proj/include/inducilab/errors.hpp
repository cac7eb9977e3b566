#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inducilab {

/// Argument outside the mathematical domain of an operation (x = y in a(x,y), p outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed object: mismatched group shapes, blow-up trees violating their invariants.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive work requested beyond a configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace inducilab
