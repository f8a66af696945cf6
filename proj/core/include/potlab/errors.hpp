#pragma once

#include <stdexcept>
#include <string>

namespace potlab {

// Raised when an argument lies outside an operation's domain
// (zero vectors, points off the sphere, radii out of order, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computed quantity contradicts a property that must hold,
// e.g. a Hardy integral that decreases along a radius grid.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace potlab
