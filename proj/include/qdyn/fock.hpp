#pragma once

// Truncated Fock-space matrix engine. This is the brute-force oracle the
// closed forms are checked against: operators are literal D x D matrices,
// commutators are literal products.
//
// Truncation contract: an operator carries a `margin`, the number of top
// Fock levels its columns may be contaminated by cutting the ladder at D.
// Identities are only asserted on columns j <= D - 1 - margin.

#include <cstddef>
#include <span>
#include <vector>

#include "qdyn/matrix.hpp"
#include "qdyn/model.hpp"

namespace qdyn {

struct FockOperator {
  CMatrix entries;
  std::size_t margin = 0;

  std::size_t dim() const noexcept { return entries.dim(); }
  /// Number of trusted columns, D - margin (0 if the margin swallows D).
  std::size_t interior_columns() const noexcept {
    return margin >= dim() ? 0 : dim() - margin;
  }
  FockOperator adjoint() const { return {entries.adjoint(), margin}; }
};

/// Product with margin(A) + margin(B).
FockOperator operator*(const FockOperator& a, const FockOperator& b);

struct Ladder {
  FockOperator lower;  // a
  FockOperator raise;  // a^dag
};

struct FockState {
  std::vector<cplx> amplitudes;
  /// Bound on the mass beyond the truncation, relative to the kept mass.
  double tail_bound = 0.0;

  std::size_t dim() const noexcept { return amplitudes.size(); }
  double norm_sq() const;
};

struct Expectation {
  cplx value;
  /// First-order estimate of the truncation error: tail mass times max |O_rc|.
  double tail_error = 0.0;
};

/// a|n> = sqrt(level(n)) |n-1>, stored at (row n-1, col n). Margin 1.
Ladder build_ladder(const ModelParams& params, std::size_t dim);

/// Diagonal E(n). Margin 0.
FockOperator build_hamiltonian(const ModelParams& params, std::size_t dim);

/// N = a^dag a as the diagonal of level(n). Margin 0.
FockOperator build_number(const ModelParams& params, std::size_t dim);

/// Lambda^{n,m} = (a^dag)^n N^m from its single band
///   entry(j+n, j) = prod_{i=1..n} sqrt(level(j+i)) * level(j)^m.
/// Margin n. Throws IndexError for n >= dim.
FockOperator build_lambda(const ModelParams& params, LambdaIndex idx, std::size_t dim);

struct HermitianPair {
  FockOperator plus;   // O + O^dag
  FockOperator minus;  // i (O - O^dag)
};

HermitianPair hermitian_pair(const FockOperator& op);

/// Inverse of hermitian_pair: (plus - i minus) / 2.
FockOperator from_hermitian_pair(const HermitianPair& pair);

/// AB - BA, margin(A) + margin(B).
FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// [H, [H, ... [H, O]...]] nested `depth` times; depth 0 returns O.
FockOperator multicommutator_matrix(const FockOperator& h, const FockOperator& o, unsigned depth);

/// e^{iHt} O e^{-iHt} for diagonal H: entry (r, c) gains e^{i (E_r - E_c) t}.
/// `t` is raw time (tau / omega_q for the q-oscillator). Throws
/// DimensionError for a non-diagonal or mismatched H.
FockOperator heisenberg_evolve(const FockOperator& o, const FockOperator& h, double t);

/// Coherent state: eigenstate of a (deformed for QOsc), amplitudes built by
/// c_{k+1} = alpha c_k / sqrt(level(k+1)) and normalised over the kept
/// levels. Throws ConvergenceError outside the q < 1 radius and
/// TruncationError when the tail cannot meet tol at this dimension.
FockState coherent_state(const ModelParams& params, cplx alpha, std::size_t dim, double tol);

/// Smallest dimension whose coherent-state tail, weighted by level(k)^moment,
/// is below tol, plus headroom.
std::size_t coherent_dimension(const ModelParams& params, cplx alpha, double tol,
                               std::size_t headroom = 0, unsigned moment = 0);

/// <psi|O|psi>.
Expectation expectation(const FockState& state, const FockOperator& op);

/// max |m(r, c)| over the trusted columns c <= D - 1 - margin.
double max_abs_interior(const CMatrix& m, std::size_t margin);

/// Diagnostic for the boundedness question: max |entry| of Lambda^{n,m}
/// at each requested dimension.
std::vector<double> band_growth(const ModelParams& params, LambdaIndex idx,
                                std::span<const std::size_t> dims);

}  // namespace qdyn
