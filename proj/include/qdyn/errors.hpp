#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdyn {

// Parameter outside the mathematical domain (q <= 0 for distributions,
// omega2 = 0 for the isomorphism map, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Series outside its radius of convergence.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A certified tail bound could not be met with the available dimension.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phase grid too coarse for nearest-branch continuation.
class UnwrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stable machine-readable tag for an exception ("domain_error", ...).
std::string_view error_kind(const std::exception& e) noexcept;

}  // namespace qdyn
