#pragma once

#include <stdexcept>
#include <string>

namespace sepcert {

/// Raised when caller-supplied data violates a documented precondition
/// (dimension mismatch, non-Hermitian input, parameter out of range, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when the cone solver cannot produce a usable answer.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sepcert
