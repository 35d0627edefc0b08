#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Invalid numerical parameter (bounds, counts, scaling factors, ids).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sample arrays whose length does not match the grid.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Physically invalid input, e.g. negative densities or unnormalized orbitals.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Non-convergence of shooting, eigenvalue search or SCF.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zetalab
