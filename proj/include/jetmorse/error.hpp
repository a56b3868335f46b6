#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jetmorse {

/// Input outside the mathematical domain of an operation (all-zero fiber
/// point, singular hypersurface point, violated general-type condition).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent input (non-hermitian matrix, dimension mismatch,
/// bad JSON).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact enumeration would exceed its configured term ceiling.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::uint64_t terms)
      : std::runtime_error(what), terms_(terms) {}
  std::uint64_t terms() const noexcept { return terms_; }

 private:
  std::uint64_t terms_;
};

/// Eigen-solver non-convergence or a non-finite integrand value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jetmorse
