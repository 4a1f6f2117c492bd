#pragma once

// Closed-form algebraic structure of the relevant operators
// Lambda^{n,m} = (a^dag)^n N^m under commutation with H:
//
//   [H, Lambda^{n,m}] = c_same Lambda^{n,m} + c_up Lambda^{n,m+1}
//
// and the j-fold multicommutators built from it.

#include <complex>
#include <utility>
#include <vector>

#include "qdyn/fock.hpp"
#include "qdyn/model.hpp"

namespace qdyn {

struct ClosureCoeffs {
  double c_same = 0.0;  // coefficient of Lambda^{n,m}
  double c_up = 0.0;    // coefficient of Lambda^{n,m+1}
};

/// QOsc: (E_q(n), E_q(n)(q-1)); Anharmonic: (n w1 + n^2 w2, 2 n w2).
ClosureCoeffs closure_coeffs(const ModelParams& params, unsigned n);

/// One term coeff * Lambda^{n,m+k} of a multicommutator expansion.
struct ExpansionTerm {
  unsigned k = 0;
  std::complex<double> coeff;
};

/// Scale Z and binomial parameter p of the depth-j expansion
///   [H,...,[H, Lambda^{n,m}]...] = Z^j sum_k B(j,k,p) Lambda^{n,m+k}.
/// QOsc (q > 1): Z = E_q(n) q, p = 1/q.
/// Anharmonic (w2 > 0): Z = n (w1 + (n+2) w2), p = (w1/w2 + n)/(w1/w2 + n + 2).
struct BinomialForm {
  double z = 0.0;
  double p = 1.0;
};

/// Throws DomainError for QOsc with q <= 1, and for Anharmonic with w2 = 0
/// (no binomial parameter exists there).
BinomialForm binomial_form(const ModelParams& params, unsigned n);

/// Terms k = 0..j of the depth-j multicommutator of Lambda^{n,m}.
/// Anharmonic with w2 = 0 degenerates to the single term (n w1)^j at k = 0.
/// `m` does not enter the coefficients; the terms refer to Lambda^{n,m+k}.
std::vector<ExpansionTerm> multicommutator_expansion(const ModelParams& params, unsigned n,
                                                     unsigned m, unsigned j);

/// sum_k coeff_k Lambda^{n,m+k} as a matrix. Margin n.
FockOperator expansion_matrix(const ModelParams& params, unsigned n, unsigned m,
                              const std::vector<ExpansionTerm>& terms, std::size_t dim);

/// Lambda^{n,m} (E_q(n) [a, a^dag])^j built from literal ladder matrices.
/// Valid for every q > 0.
FockOperator power_law_multicommutator(const QOsc& params, unsigned n, unsigned m, unsigned j,
                                       std::size_t dim);

/// Element-wise reading of the dynamical scaling law on the band of
/// Lambda^{n,m}: the phase of <j+n|Lambda(tau)|j> / <j+n|Lambda(0)|j>
/// equals [n]_q tau q^j. The returned residual is
///   circular_distance(arg(ratio), [n]_q tau q^j) / [n]_q,
/// i.e. the distance of tau q^j from the nearest [n]_q-th root branch.
///
/// Throws DomainError for n = 0 and when the band entry vanishes
/// (m >= 1 at j_col = 0), where the ratio is undefined.
double scaling_phase_check(const QOsc& params, unsigned n, unsigned m, double tau,
                           std::size_t j_col, std::size_t dim);

/// Coefficients S_q^{s,M} (s = 0..M) of
///   Lambda^{n,M} = sum_s S_q^{s,M} (a^dag)^{n+s} a^s.
/// Independent of n.
std::vector<std::pair<unsigned, double>> normal_order_expansion(unsigned n, unsigned big_m,
                                                                double q);

/// The normally ordered right-hand side built from literal ladder products.
FockOperator normal_ordered_matrix(const ModelParams& params, unsigned n, unsigned big_m,
                                   std::size_t dim);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double x);

/// |a - b| measured on the circle.
double circular_distance(double a, double b);

}  // namespace qdyn
