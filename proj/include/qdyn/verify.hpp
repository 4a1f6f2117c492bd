#pragma once

// Verification suites: each identity is checked against the Fock-matrix
// oracle (or two independent scalar routes) over a fixed parameter grid.
// Shared by `qdyn verify` and the acceptance binary.
//
// Matrix residuals are scaled: max |difference| over the trusted columns
// divided by the largest trusted entry of the reference side. Entries of
// Lambda^{n,m} span hundreds of decades at q = 2, D = 64, so an absolute
// threshold would be meaningless.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdyn/matrix.hpp"

namespace qdyn {

struct CheckRecord {
  std::string check_id;
  nlohmann::json params;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::size_t dim = 64;
  double tol = 1e-12;
  double tau_max = 10.0;
  std::size_t steps = 401;
  double alpha = 0.8;
};

/// closure, multicommutator, scaling, normal-order, relation, isomorphism,
/// dynamics-oracle (and "all" on top).
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<CheckRecord> run_suite(std::string_view suite, const VerifyOptions& options = {});

bool all_pass(const std::vector<CheckRecord>& records);

nlohmann::json to_json(const CheckRecord& record);
nlohmann::json to_json(const std::vector<CheckRecord>& records);

/// max |diff| / max |ref| over columns c <= D - 1 - margin (0 when both vanish).
double scaled_interior_residual(const CMatrix& diff, const CMatrix& ref, std::size_t margin);

/// Uniform grid of `steps` points on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t steps);

}  // namespace qdyn
