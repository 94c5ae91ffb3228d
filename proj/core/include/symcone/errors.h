#pragma once

#include <stdexcept>
#include <string>

namespace symcone {

// Mismatched descriptors, malformed text, bad dimensions.
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Eigensolver non-convergence, non-finite values, broken internal checks.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

// Argument outside the domain of the operation (e.g. sqrt of a non-cone
// element).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A documented precondition of the operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace symcone
