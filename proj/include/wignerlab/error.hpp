#pragma once

#include <stdexcept>
#include <string>

namespace wignerlab {

/// A precondition on inputs was violated (bad grid, wrong representation,
/// unnormalized state, mismatched grids, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical invariant failed at run time (imaginary residue in a WDF,
/// unstable time stepping, edge breach during propagation, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable or malformed files and bad command-line input.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wignerlab
