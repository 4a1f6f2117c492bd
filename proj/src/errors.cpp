#include "qdyn/errors.hpp"

namespace qdyn {

std::string_view error_kind(const std::exception& e) noexcept {
  if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence_error";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension_error";
  if (dynamic_cast<const IndexError*>(&e)) return "index_error";
  if (dynamic_cast<const TruncationError*>(&e)) return "truncation_error";
  if (dynamic_cast<const UnwrapError*>(&e)) return "unwrap_error";
  return "error";
}

}  // namespace qdyn
