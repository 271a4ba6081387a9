#pragma once

#include <stdexcept>
#include <string>

namespace polypdd {

/// Invalid or degenerate geometric input (zero area, self-intersection,
/// overlapping regions, malformed geometry documents).
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical result failed one of its own consistency checks, e.g. a
/// density that does not integrate to one at the requested resolution.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form term was evaluated outside the region where it is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace polypdd
