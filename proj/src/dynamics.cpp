#include "qdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qdyn/algebra.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/fock.hpp"
#include "qdyn/kernels.hpp"

namespace qdyn {
namespace {

using cplx = std::complex<double>;

void require_increasing(std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
  for (double t : grid) {
    if (!std::isfinite(t)) throw DomainError("time grid must be finite");
  }
}

cplx conj_power(cplx alpha, unsigned n) {
  const cplx a = std::conj(alpha);
  cplx out = 1.0;
  for (unsigned i = 0; i < n; ++i) out *= a;
  return out;
}

// (alpha*)^n sum_k coeff_k e^{i freq_k t} on every grid point.
std::vector<cplx> phase_sums(cplx prefactor, const std::vector<double>& coeff,
                             const std::vector<double>& freq, std::span<const double> grid) {
  std::vector<cplx> out;
  out.reserve(grid.size());
  std::vector<cplx> phasors(coeff.size());
  for (double t : grid) {
    for (std::size_t k = 0; k < coeff.size(); ++k) phasors[k] = std::polar(1.0, freq[k] * t);
    out.push_back(prefactor * kernels::weighted_sum(coeff, phasors));
  }
  return out;
}

}  // namespace

TimeSeries evolve_q_expectation(const QOsc& params, cplx alpha, LambdaIndex idx,
                                std::span<const double> tau_grid, double tol) {
  validate(params);
  require_increasing(tau_grid);
  const WeightDistribution w = q_poisson_weights(std::norm(alpha), params.q, tol, idx.m);

  const double qn = q_number(idx.n, params.q);
  std::vector<double> coeff(w.size());
  std::vector<double> freq(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    coeff[k] = std::pow(q_number(k, params.q), static_cast<double>(idx.m)) * w[k];
    // [n] + [n](q-1)[k] = [n] q^k
    freq[k] = qn * std::pow(params.q, static_cast<double>(k));
  }

  TimeSeries ts{{tau_grid.begin(), tau_grid.end()}, {}, params, idx, alpha, w.tail_bound, w.size()};
  const cplx prefactor = conj_power(alpha, idx.n);
  ts.values = phase_sums(prefactor, coeff, freq, tau_grid);
  if (idx.m == 0) {
    // sum_k P_q = 1 exactly wherever every phase vanishes
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
      if (tau_grid[i] == 0.0 || idx.n == 0) ts.values[i] = prefactor;
    }
  }
  return ts;
}

TimeSeries evolve_anharmonic_expectation(const Anharmonic& params, cplx alpha, LambdaIndex idx,
                                         std::span<const double> t_grid, double tol) {
  validate(params);
  require_increasing(t_grid);
  const WeightDistribution w = poisson_weights(std::norm(alpha), tol, idx.m);

  const double nn = idx.n;
  const double base = nn * params.omega1 + nn * nn * params.omega2;
  std::vector<double> coeff(w.size());
  std::vector<double> freq(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double kk = static_cast<double>(k);
    coeff[k] = std::pow(kk, static_cast<double>(idx.m)) * w[k];
    freq[k] = base + 2.0 * nn * params.omega2 * kk;
  }

  TimeSeries ts{{t_grid.begin(), t_grid.end()}, {}, params, idx, alpha, w.tail_bound, w.size()};
  const cplx prefactor = conj_power(alpha, idx.n);
  ts.values = phase_sums(prefactor, coeff, freq, t_grid);
  if (idx.m == 0) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (t_grid[i] == 0.0 || idx.n == 0) ts.values[i] = prefactor;
    }
  }
  return ts;
}

TimeSeries evolve_anharmonic_closed(const Anharmonic& params, cplx alpha, LambdaIndex idx,
                                    std::span<const double> t_grid) {
  validate(params);
  require_increasing(t_grid);
  const double x = std::norm(alpha);
  const double nn = idx.n;
  const double base = nn * params.omega1 + nn * nn * params.omega2;
  const double rev = 2.0 * nn * params.omega2;

  std::vector<double> stirling_x(idx.m + 1);
  for (unsigned r = 0; r <= idx.m; ++r) {
    stirling_x[r] = stirling2(r, idx.m) * std::pow(x, static_cast<double>(r));
  }

  TimeSeries ts{{t_grid.begin(), t_grid.end()}, {}, params, idx, alpha, 0.0, 0};
  const cplx prefactor = conj_power(alpha, idx.n);
  ts.values.reserve(t_grid.size());
  for (double t : t_grid) {
    const cplx rot = std::polar(1.0, rev * t);
    cplx poly = 0.0;
    for (unsigned r = 0; r <= idx.m; ++r) poly += stirling_x[r] * std::polar(1.0, rev * t * r);
    // exp[x (e^{i theta} - 1)] with the real part as x (cos theta - 1)
    const cplx envelope = std::exp(cplx{-2.0 * x * std::pow(std::sin(0.5 * rev * t), 2), x * rot.imag()});
    ts.values.push_back(prefactor * std::polar(1.0, base * t) * envelope * poly);
  }
  return ts;
}

TimeSeries evolve_fock_oracle(const ModelParams& params, cplx alpha, LambdaIndex idx,
                              std::span<const double> grid, double state_tol) {
  validate(params);
  require_increasing(grid);
  const std::size_t dim = coherent_dimension(params, alpha, state_tol, idx.n + 1, idx.m);
  const FockState state = coherent_state(params, alpha, dim, state_tol);
  const FockOperator h = build_hamiltonian(params, dim);
  const FockOperator lambda = build_lambda(params, idx, dim);
  const double unit = time_unit(params);

  TimeSeries ts{{grid.begin(), grid.end()}, {}, params, idx, alpha, state.tail_bound, dim};
  ts.values.reserve(grid.size());
  for (double t : grid) {
    ts.values.push_back(expectation(state, heisenberg_evolve(lambda, h, t / unit)).value);
  }
  return ts;
}

double relation_identity_residual(double x, double q, unsigned m) {
  const double lhs = q_moment_series(x, q, m);
  double poly = 0.0;
  for (unsigned r = 0; r <= m; ++r) poly += q_stirling2(r, m, q) * std::pow(x, static_cast<double>(r));
  const double rhs = poly * q_exponential(x, q);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

PhaseTrace fock_phase_trace(const QOsc& params, unsigned n, unsigned m, std::size_t j_col,
                            std::span<const double> tau_grid, std::size_t dim) {
  require_increasing(tau_grid);
  if (n == 0) throw DomainError("phase trace needs n >= 1");
  if (j_col + n >= dim) throw IndexError("phase trace column outside the Fock space");
  const ModelParams model = params;
  const FockOperator lambda = build_lambda(model, {n, m}, dim);
  const cplx initial = lambda.entries(j_col + n, j_col);
  if (initial == cplx{}) {
    throw DomainError("phase trace undefined: band entry vanishes (m >= 1 at column 0)");
  }
  const FockOperator h = build_hamiltonian(model, dim);

  PhaseTrace trace{n, m, params.q, j_col, {tau_grid.begin(), tau_grid.end()}, {}, 0.0};
  trace.rate_bound =
      std::abs(h.entries(j_col + n, j_col + n).real() - h.entries(j_col, j_col).real()) /
      params.omega_q;
  trace.wrapped.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    const FockOperator evolved = heisenberg_evolve(lambda, h, tau / params.omega_q);
    trace.wrapped.push_back(std::arg(evolved.entries(j_col + n, j_col) / initial));
  }
  return trace;
}

CollapsedCurve normalize_phase_curve(const PhaseTrace& trace) {
  if (trace.times.size() != trace.wrapped.size()) {
    throw DimensionError("phase trace: times and samples differ in length");
  }
  require_increasing(trace.times);
  const std::string label = "(n=" + std::to_string(trace.n) + ", m=" + std::to_string(trace.m) + ")";
  for (std::size_t i = 1; i < trace.times.size(); ++i) {
    const double step = (trace.times[i] - trace.times[i - 1]) * trace.rate_bound;
    if (step >= std::numbers::pi) {
      throw UnwrapError("phase unwrap refused for curve " + label + ": phase step " +
                        std::to_string(step) + " >= pi at grid index " + std::to_string(i));
    }
  }
  CollapsedCurve out{trace.n, trace.m, trace.q, trace.j_col, trace.times, {}};
  out.values.reserve(trace.wrapped.size());
  const double qn = q_number(trace.n, trace.q);
  double unwrapped = trace.wrapped.empty() ? 0.0 : trace.wrapped.front();
  for (std::size_t i = 0; i < trace.wrapped.size(); ++i) {
    if (i > 0) unwrapped += wrap_angle(trace.wrapped[i] - trace.wrapped[i - 1]);
    out.values.push_back(unwrapped / qn);
  }
  return out;
}

std::vector<CollapsedCurve> collapse_transform(std::span<const PhaseTrace> traces) {
  std::vector<CollapsedCurve> out;
  out.reserve(traces.size());
  for (const PhaseTrace& t : traces) out.push_back(normalize_phase_curve(t));
  return out;
}

double collapse_deviation(std::span<const CollapsedCurve> curves) {
  double dev = 0.0;
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      if (curves[a].values.size() != curves[b].values.size()) {
        throw DimensionError("collapse curves are on different grids");
      }
      for (std::size_t i = 0; i < curves[a].values.size(); ++i) {
        dev = std::max(dev, std::abs(curves[a].values[i] - curves[b].values[i]));
      }
    }
  }
  return dev;
}

}  // namespace qdyn
