#pragma once

// Expectation-value dynamics of Lambda^{n,m} from coherent-class initial
// states: the q-Poisson phase sum for the Arik-Coon oscillator, the
// Poisson phase sum and its Stirling closed form for the anharmonic
// oscillator, and the scaling-collapse transform.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qdyn/model.hpp"
#include "qdyn/qcore.hpp"

namespace qdyn {

struct TimeSeries {
  /// tau = omega_q t for QOsc, raw t for Anharmonic.
  std::vector<double> times;
  std::vector<std::complex<double>> values;
  ModelParams model;
  LambdaIndex idx;
  std::complex<double> alpha;
  /// Certified bound on the dropped part of the k-sum (0 for closed forms).
  double truncation_tail = 0.0;
  /// Number of k-terms kept (0 for closed forms).
  std::size_t terms = 0;
};

/// <Lambda^{n,m}>_tau = (alpha*)^n sum_k [k]^m P_q(alpha,k) e^{i [n]_q q^k tau}.
/// The k-sum is cut where the [k]^m-weighted tail bound drops below tol.
TimeSeries evolve_q_expectation(const QOsc& params, std::complex<double> alpha, LambdaIndex idx,
                                std::span<const double> tau_grid, double tol = kDefaultTol);

/// <Lambda^{n,m}>_t = (alpha*)^n sum_k k^m P(alpha,k) e^{i (n w1 + n^2 w2 + 2 n w2 k) t}.
TimeSeries evolve_anharmonic_expectation(const Anharmonic& params, std::complex<double> alpha,
                                         LambdaIndex idx, std::span<const double> t_grid,
                                         double tol = kDefaultTol);

/// Closed form of the anharmonic phase sum through Stirling numbers:
///   (alpha*)^n e^{i(n w1 + n^2 w2)t} exp[|alpha|^2 (e^{i 2 n w2 t} - 1)]
///     * sum_r S^{r,m} |alpha|^{2r} e^{i 2 n w2 r t}.
TimeSeries evolve_anharmonic_closed(const Anharmonic& params, std::complex<double> alpha,
                                    LambdaIndex idx, std::span<const double> t_grid);

/// Matrix route: <alpha| e^{iHt} Lambda e^{-iHt} |alpha> on a truncated Fock
/// space sized so that the level^m-weighted state tail is below state_tol.
TimeSeries evolve_fock_oracle(const ModelParams& params, std::complex<double> alpha,
                              LambdaIndex idx, std::span<const double> grid,
                              double state_tol = 1e-14);

/// |LHS - RHS| / |RHS| of
///   sum_k [k]^m x^k/[k]! = sum_{r<=m} S_q^{r,m} x^r exp_q(x).
double relation_identity_residual(double x, double q, unsigned m);

/// Wrapped phase samples of one band element, ready for unwrapping.
struct PhaseTrace {
  unsigned n = 1;
  unsigned m = 0;
  double q = 1.0;
  std::size_t j_col = 0;
  std::vector<double> times;
  std::vector<double> wrapped;  // in (-pi, pi]
  /// Upper bound on |d phase / d tau|; with the grid spacing it decides
  /// whether nearest-branch continuation is trustworthy.
  double rate_bound = 0.0;
};

/// Phase of <j+n|Lambda^{n,m}(tau)|j> / <j+n|Lambda^{n,m}(0)|j> from the
/// Fock-matrix evolution. Throws DomainError where the ratio is undefined.
PhaseTrace fock_phase_trace(const QOsc& params, unsigned n, unsigned m, std::size_t j_col,
                            std::span<const double> tau_grid, std::size_t dim);

struct CollapsedCurve {
  unsigned n = 1;
  unsigned m = 0;
  double q = 1.0;
  std::size_t j_col = 0;
  std::vector<double> times;
  std::vector<double> values;  // unwrapped phase / [n]_q
};

/// Unwraps one trace by nearest-branch continuation and divides by [n]_q.
/// Throws UnwrapError when rate_bound * step >= pi anywhere on the grid.
CollapsedCurve normalize_phase_curve(const PhaseTrace& trace);

/// normalize_phase_curve over a family; the first failure is rethrown.
std::vector<CollapsedCurve> collapse_transform(std::span<const PhaseTrace> traces);

/// Largest pointwise difference between any two curves on a shared grid.
double collapse_deviation(std::span<const CollapsedCurve> curves);

}  // namespace qdyn
