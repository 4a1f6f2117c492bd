#include "qdyn/algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdyn/errors.hpp"
#include "qdyn/qcore.hpp"

namespace qdyn {

ClosureCoeffs closure_coeffs(const ModelParams& params, unsigned n) {
  validate(params);
  if (const auto* p = std::get_if<QOsc>(&params)) {
    const double e = p->omega_q * q_number(n, p->q);
    return {e, e * (p->q - 1.0)};
  }
  const auto& a = std::get<Anharmonic>(params);
  const double nn = n;
  return {nn * a.omega1 + nn * nn * a.omega2, 2.0 * nn * a.omega2};
}

BinomialForm binomial_form(const ModelParams& params, unsigned n) {
  validate(params);
  if (const auto* p = std::get_if<QOsc>(&params)) {
    if (!(p->q > 1.0)) {
      throw DomainError("binomial multicommutator form needs q > 1 (got q = " +
                        std::to_string(p->q) + "); use the power-law form");
    }
    return {p->omega_q * q_number(n, p->q) * p->q, 1.0 / p->q};
  }
  const auto& a = std::get<Anharmonic>(params);
  if (!(a.omega2 > 0.0)) throw DomainError("binomial multicommutator form needs omega2 > 0");
  const double w = a.omega1 / a.omega2;
  const double nn = n;
  return {nn * (a.omega1 + (nn + 2.0) * a.omega2), (w + nn) / (w + nn + 2.0)};
}

std::vector<ExpansionTerm> multicommutator_expansion(const ModelParams& params, unsigned n,
                                                     unsigned /*m*/, unsigned j) {
  validate(params);
  if (const auto* a = std::get_if<Anharmonic>(&params); a && a->omega2 == 0.0) {
    return {{0, std::pow(n * a->omega1, static_cast<double>(j))}};
  }
  const BinomialForm form = binomial_form(params, n);
  const WeightDistribution b = binomial_weights(j, form.p);
  const double zj = std::pow(form.z, static_cast<double>(j));
  std::vector<ExpansionTerm> terms;
  terms.reserve(j + 1);
  for (unsigned k = 0; k <= j; ++k) terms.push_back({k, zj * b[k]});
  return terms;
}

FockOperator expansion_matrix(const ModelParams& params, unsigned n, unsigned m,
                              const std::vector<ExpansionTerm>& terms, std::size_t dim) {
  FockOperator out{CMatrix(dim), n};
  for (const ExpansionTerm& t : terms) {
    out.entries += build_lambda(params, {n, m + t.k}, dim).entries * t.coeff;
  }
  return out;
}

FockOperator power_law_multicommutator(const QOsc& params, unsigned n, unsigned m, unsigned j,
                                       std::size_t dim) {
  const ModelParams model = params;
  const Ladder ladder = build_ladder(model, dim);
  FockOperator step = commutator(ladder.lower, ladder.raise);
  step.entries *= params.omega_q * q_number(n, params.q);
  FockOperator power{CMatrix::identity(dim), 0};
  for (unsigned i = 0; i < j; ++i) power = power * step;
  return build_lambda(model, {n, m}, dim) * power;
}

double scaling_phase_check(const QOsc& params, unsigned n, unsigned m, double tau,
                           std::size_t j_col, std::size_t dim) {
  if (n == 0) throw DomainError("scaling check needs n >= 1");
  if (j_col + n >= dim) throw IndexError("scaling check column outside the Fock space");
  const ModelParams model = params;
  const FockOperator lambda = build_lambda(model, {n, m}, dim);
  const cplx initial = lambda.entries(j_col + n, j_col);
  if (initial == cplx{}) {
    throw DomainError("scaling check undefined: band entry vanishes (m >= 1 at column 0)");
  }
  const FockOperator h = build_hamiltonian(model, dim);
  const FockOperator evolved = heisenberg_evolve(lambda, h, tau / params.omega_q);
  const double phase = std::arg(evolved.entries(j_col + n, j_col) / initial);
  const double qn = q_number(n, params.q);
  const double expected = qn * tau * std::pow(params.q, static_cast<double>(j_col));
  return circular_distance(phase, expected) / qn;
}

std::vector<std::pair<unsigned, double>> normal_order_expansion(unsigned /*n*/, unsigned big_m,
                                                                double q) {
  std::vector<std::pair<unsigned, double>> out;
  out.reserve(big_m + 1);
  for (unsigned s = 0; s <= big_m; ++s) out.emplace_back(s, q_stirling2(s, big_m, q));
  return out;
}

FockOperator normal_ordered_matrix(const ModelParams& params, unsigned n, unsigned big_m,
                                   std::size_t dim) {
  const Ladder ladder = build_ladder(params, dim);
  std::vector<FockOperator> raise_pow{{CMatrix::identity(dim), 0}};
  for (unsigned i = 0; i < n + big_m; ++i) raise_pow.push_back(raise_pow.back() * ladder.raise);
  std::vector<FockOperator> lower_pow{{CMatrix::identity(dim), 0}};
  for (unsigned i = 0; i < big_m; ++i) lower_pow.push_back(lower_pow.back() * ladder.lower);

  FockOperator out{CMatrix(dim), 0};
  for (const auto& [s, coeff] : normal_order_expansion(n, big_m, deformation(params))) {
    const FockOperator term = raise_pow[n + s] * lower_pow[s];
    out.entries += term.entries * cplx{coeff, 0.0};
    out.margin = std::max(out.margin, term.margin);
  }
  return out;
}

double wrap_angle(double x) {
  const double r = std::remainder(x, 2.0 * std::numbers::pi);
  return r <= -std::numbers::pi ? r + 2.0 * std::numbers::pi : r;
}

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace qdyn
