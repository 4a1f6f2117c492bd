#include "qdyn/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdyn/errors.hpp"
#include "qdyn/kernels.hpp"
#include "qdyn/qcore.hpp"

namespace qdyn {
namespace {

void require_dim(std::size_t dim) {
  if (dim < 2) throw DimensionError("Fock dimension must be >= 2, got " + std::to_string(dim));
}

void require_same_dim(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("operator dimensions differ: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

std::vector<double> levels(const ModelParams& params, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = level(params, k);
  return out;
}

}  // namespace

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  require_same_dim(a, b);
  return {a.entries * b.entries, a.margin + b.margin};
}

double FockState::norm_sq() const {
  double acc = 0.0;
  for (const cplx& c : amplitudes) acc += std::norm(c);
  return acc;
}

Ladder build_ladder(const ModelParams& params, std::size_t dim) {
  validate(params);
  require_dim(dim);
  CMatrix lower(dim);
  for (std::size_t n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(level(params, n));
  FockOperator a{std::move(lower), 1};
  FockOperator a_dag = a.adjoint();
  return {std::move(a), std::move(a_dag)};
}

FockOperator build_hamiltonian(const ModelParams& params, std::size_t dim) {
  validate(params);
  require_dim(dim);
  std::vector<double> diag(dim);
  for (std::size_t n = 0; n < dim; ++n) diag[n] = energy(params, n);
  return {CMatrix::diagonal(diag), 0};
}

FockOperator build_number(const ModelParams& params, std::size_t dim) {
  validate(params);
  require_dim(dim);
  return {CMatrix::diagonal(levels(params, dim)), 0};
}

FockOperator build_lambda(const ModelParams& params, LambdaIndex idx, std::size_t dim) {
  validate(params);
  if (idx.n >= dim) {
    throw IndexError("Lambda supra-index n = " + std::to_string(idx.n) +
                     " does not fit in dimension " + std::to_string(dim));
  }
  const std::vector<double> lv = levels(params, dim);
  CMatrix band(dim);
  for (std::size_t j = 0; j + idx.n < dim; ++j) {
    double raise = 1.0;
    for (std::size_t i = 1; i <= idx.n; ++i) raise *= std::sqrt(lv[j + i]);
    band(j + idx.n, j) = raise * std::pow(lv[j], static_cast<double>(idx.m));
  }
  return {std::move(band), idx.n};
}

HermitianPair hermitian_pair(const FockOperator& op) {
  const FockOperator dag = op.adjoint();
  FockOperator plus{op.entries + dag.entries, op.margin};
  FockOperator minus{(op.entries - dag.entries) * cplx{0.0, 1.0}, op.margin};
  return {std::move(plus), std::move(minus)};
}

FockOperator from_hermitian_pair(const HermitianPair& pair) {
  require_same_dim(pair.plus, pair.minus);
  CMatrix out = (pair.plus.entries - pair.minus.entries * cplx{0.0, 1.0}) * cplx{0.5, 0.0};
  return {std::move(out), std::max(pair.plus.margin, pair.minus.margin)};
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  require_same_dim(a, b);
  CMatrix out = a.entries * b.entries;
  out -= b.entries * a.entries;
  return {std::move(out), a.margin + b.margin};
}

FockOperator multicommutator_matrix(const FockOperator& h, const FockOperator& o, unsigned depth) {
  require_same_dim(h, o);
  FockOperator current = o;
  for (unsigned j = 0; j < depth; ++j) current = commutator(h, current);
  return current;
}

FockOperator heisenberg_evolve(const FockOperator& o, const FockOperator& h, double t) {
  require_same_dim(h, o);
  if (!h.entries.is_diagonal()) {
    throw DimensionError("heisenberg_evolve requires a diagonal Hamiltonian");
  }
  const std::size_t dim = o.dim();
  CMatrix phases(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const double er = h.entries(r, r).real();
    for (std::size_t c = 0; c < dim; ++c) {
      phases(r, c) = std::polar(1.0, (er - h.entries(c, c).real()) * t);
    }
  }
  CMatrix out(dim);
  kernels::hadamard(o.entries.data(), phases.data(), out.data());
  return {std::move(out), o.margin};
}

FockState coherent_state(const ModelParams& params, cplx alpha, std::size_t dim, double tol) {
  validate(params);
  require_dim(dim);
  const double alpha_sq = std::norm(alpha);
  const double q = deformation(params);
  if (q < 1.0 && !(alpha_sq < 1.0 / (1.0 - q))) {
    throw ConvergenceError("coherent state: |alpha|^2 outside the radius 1/(1-q)");
  }
  FockState state;
  state.amplitudes.assign(dim, cplx{});
  if (alpha_sq == 0.0) {
    state.amplitudes[0] = 1.0;
    return state;
  }
  // log|c_k| by the eigenvalue recursion, phase k * arg(alpha).
  const double log_abs = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);
  std::vector<double> log_mod(dim);
  for (std::size_t k = 1; k < dim; ++k) {
    log_mod[k] = log_mod[k - 1] + log_abs - 0.5 * std::log(level(params, k));
  }
  const double peak = *std::max_element(log_mod.begin(), log_mod.end());
  double norm = 0.0;
  for (std::size_t k = 0; k < dim; ++k) norm += std::exp(2.0 * (log_mod[k] - peak));
  const double log_norm = peak + 0.5 * std::log(norm);
  for (std::size_t k = 0; k < dim; ++k) {
    state.amplitudes[k] = std::polar(std::exp(log_mod[k] - log_norm), phase * static_cast<double>(k));
  }
  const double rho = alpha_sq / level(params, dim);
  state.tail_bound = rho < 1.0 ? std::norm(state.amplitudes[dim - 1]) * rho / (1.0 - rho)
                               : std::numeric_limits<double>::infinity();
  if (!(state.tail_bound <= tol)) {
    throw TruncationError("coherent state tail " + std::to_string(state.tail_bound) +
                          " exceeds tol at dimension " + std::to_string(dim));
  }
  return state;
}

std::size_t coherent_dimension(const ModelParams& params, cplx alpha, double tol,
                               std::size_t headroom, unsigned moment) {
  validate(params);
  const double alpha_sq = std::norm(alpha);
  const WeightDistribution w = std::holds_alternative<QOsc>(params)
                                   ? q_poisson_weights(alpha_sq, deformation(params), tol, moment)
                                   : poisson_weights(alpha_sq, tol, moment);
  return std::max<std::size_t>(2, w.size()) + headroom;
}

Expectation expectation(const FockState& state, const FockOperator& op) {
  if (state.dim() != op.dim()) throw DimensionError("state and operator dimensions differ");
  std::vector<cplx> applied(state.dim());
  kernels::gemv(state.dim(), op.entries.data(), state.amplitudes, applied);
  return {kernels::dotc(state.amplitudes, applied), state.tail_bound * op.entries.max_abs()};
}

double max_abs_interior(const CMatrix& m, std::size_t margin) {
  const std::size_t dim = m.dim();
  if (margin >= dim) return 0.0;
  double out = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c + margin < dim; ++c) out = std::max(out, std::abs(m(r, c)));
  }
  return out;
}

std::vector<double> band_growth(const ModelParams& params, LambdaIndex idx,
                                std::span<const std::size_t> dims) {
  std::vector<double> out;
  out.reserve(dims.size());
  for (std::size_t d : dims) out.push_back(build_lambda(params, idx, d).entries.max_abs());
  return out;
}

}  // namespace qdyn
