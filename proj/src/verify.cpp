#include "qdyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "qdyn/algebra.hpp"
#include "qdyn/dynamics.hpp"
#include "qdyn/fock.hpp"
#include "qdyn/isomap.hpp"
#include "qdyn/qcore.hpp"

namespace qdyn {
namespace {

using nlohmann::json;

constexpr double kClosureTol = 1e-10;
constexpr double kCommutationTol = 1e-12;
constexpr double kMulticommutatorTol = 1e-9;
constexpr double kClosedFormTol = 1e-12;
constexpr double kScalingTol = 1e-9;
constexpr double kScalingSpreadTol = 1e-12;
constexpr double kNormalOrderTol = 1e-9;
constexpr double kRelationTol = 1e-10;
constexpr double kIsomorphismTol = 1e-12;
constexpr double kOracleTol = 1e-8;
constexpr double kClosedVsSeriesTol = 1e-10;
constexpr double kBridgeTol = 1e-6;

const std::vector<double> kClosureQs{0.5, 1.0, 1.2, 2.0};
const std::vector<double> kBinomialQs{1.2, 2.0};
const std::vector<double> kPowerLawQs{0.5, 1.2, 2.0};
const Anharmonic kAnharmonic{10.0, 1.0};

CheckRecord make_record(std::string id, json params, double residual, double tolerance) {
  const bool pass = std::isfinite(residual) && residual < tolerance;
  return {std::move(id), std::move(params), residual, tolerance, pass};
}

json model_json(const ModelParams& model) {
  if (const auto* p = std::get_if<QOsc>(&model)) {
    return {{"model", "qosc"}, {"q", p->q}, {"omega_q", p->omega_q}};
  }
  const auto& a = std::get<Anharmonic>(model);
  return {{"model", "anharmonic"}, {"omega1", a.omega1}, {"omega2", a.omega2}};
}

std::string model_tag(const ModelParams& model) {
  if (const auto* p = std::get_if<QOsc>(&model)) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "qosc(q=%g)", p->q);
    return buf;
  }
  const auto& a = std::get<Anharmonic>(model);
  char buf[64];
  std::snprintf(buf, sizeof buf, "anharmonic(w1=%g,w2=%g)", a.omega1, a.omega2);
  return buf;
}

std::string nm_tag(unsigned n, unsigned m) {
  return "n=" + std::to_string(n) + ",m=" + std::to_string(m);
}

std::vector<ModelParams> closure_models() {
  std::vector<ModelParams> out;
  for (double q : kClosureQs) out.emplace_back(QOsc{q, 1.0});
  out.emplace_back(kAnharmonic);
  return out;
}

// [H, L] - c_same L - c_up L' and the dagger form
// [H, L^dag] + c_same L^dag + c_up L'^dag, both scaled.
double closure_residual(const ModelParams& model, unsigned n, unsigned m, std::size_t dim) {
  const FockOperator h = build_hamiltonian(model, dim);
  const FockOperator lam = build_lambda(model, {n, m}, dim);
  const FockOperator lam_up = build_lambda(model, {n, m + 1}, dim);
  const ClosureCoeffs c = closure_coeffs(model, n);

  const FockOperator comm = commutator(h, lam);
  const CMatrix same = lam.entries * cplx{c.c_same, 0.0};
  const CMatrix up = lam_up.entries * cplx{c.c_up, 0.0};
  const double scale = std::max({max_abs_interior(comm.entries, n), max_abs_interior(same, n),
                                 max_abs_interior(up, n)});
  if (scale == 0.0) return max_abs_interior(comm.entries - same - up, n);
  const double direct = max_abs_interior(comm.entries - same - up, n) / scale;

  const FockOperator comm_dag = commutator(h, lam.adjoint());
  const CMatrix dag_res = comm_dag.entries + same.adjoint() + up.adjoint();
  // The dagger band sits above the diagonal; adjoint it back onto the
  // trusted columns.
  const double dagger = max_abs_interior(dag_res.adjoint(), n) / scale;
  return std::max(direct, dagger);
}

std::vector<CheckRecord> closure_suite(const VerifyOptions& opt) {
  std::vector<CheckRecord> out;
  for (const ModelParams& model : closure_models()) {
    for (unsigned n = 0; n <= 4; ++n) {
      for (unsigned m = 0; m <= 4; ++m) {
        json params = model_json(model);
        params["n"] = n;
        params["m"] = m;
        params["dim"] = opt.dim;
        out.push_back(make_record("closure/" + model_tag(model) + "/" + nm_tag(n, m), params,
                                  closure_residual(model, n, m, opt.dim), kClosureTol));
      }
    }
  }
  // Deformed commutation relation [a, a^dag] = 1 + (q-1) H / omega_q.
  for (double q : kClosureQs) {
    const ModelParams model = QOsc{q, 1.0};
    const Ladder ladder = build_ladder(model, opt.dim);
    const FockOperator comm = commutator(ladder.lower, ladder.raise);
    const FockOperator h = build_hamiltonian(model, opt.dim);
    CMatrix expected = CMatrix::identity(opt.dim) + h.entries * cplx{q - 1.0, 0.0};
    json params = model_json(model);
    params["dim"] = opt.dim;
    out.push_back(make_record("commutation/" + model_tag(model), params,
                              scaled_interior_residual(comm.entries - expected, expected, comm.margin),
                              kCommutationTol));
  }
  return out;
}

std::vector<CheckRecord> multicommutator_suite(const VerifyOptions& opt) {
  std::vector<CheckRecord> out;
  constexpr unsigned kMaxDepth = 6;

  std::vector<ModelParams> binomial_models;
  for (double q : kBinomialQs) binomial_models.emplace_back(QOsc{q, 1.0});
  binomial_models.emplace_back(kAnharmonic);

  for (const ModelParams& model : binomial_models) {
    const FockOperator h = build_hamiltonian(model, opt.dim);
    for (unsigned n = 0; n <= 3; ++n) {
      for (unsigned m = 0; m <= 3; ++m) {
        FockOperator nested = build_lambda(model, {n, m}, opt.dim);
        double worst = 0.0;
        for (unsigned j = 0; j <= kMaxDepth; ++j) {
          if (j > 0) nested = commutator(h, nested);
          const FockOperator expansion =
              expansion_matrix(model, n, m, multicommutator_expansion(model, n, m, j), opt.dim);
          worst = std::max(worst, scaled_interior_residual(expansion.entries - nested.entries,
                                                           nested.entries, nested.margin));
        }
        json params = model_json(model);
        params.update({{"n", n}, {"m", m}, {"j_max", kMaxDepth}, {"dim", opt.dim}});
        out.push_back(make_record("multicommutator.binomial/" + model_tag(model) + "/" + nm_tag(n, m),
                                  params, worst, kMulticommutatorTol));
      }
    }
  }

  for (double q : kPowerLawQs) {
    const QOsc qosc{q, 1.0};
    const ModelParams model = qosc;
    const FockOperator h = build_hamiltonian(model, opt.dim);
    for (unsigned n = 0; n <= 3; ++n) {
      for (unsigned m = 0; m <= 3; ++m) {
        FockOperator nested = build_lambda(model, {n, m}, opt.dim);
        double worst = 0.0;
        for (unsigned j = 0; j <= kMaxDepth; ++j) {
          if (j > 0) nested = commutator(h, nested);
          const FockOperator power = power_law_multicommutator(qosc, n, m, j, opt.dim);
          worst = std::max(worst, scaled_interior_residual(power.entries - nested.entries,
                                                           nested.entries,
                                                           std::max(power.margin, nested.margin)));
        }
        json params = model_json(model);
        params.update({{"n", n}, {"m", m}, {"j_max", kMaxDepth}, {"dim", opt.dim}});
        out.push_back(make_record("multicommutator.power_law/" + model_tag(model) + "/" + nm_tag(n, m),
                                  params, worst, kMulticommutatorTol));
      }
    }
  }

  // (E(n) q^c)^j against Z^j sum_k B(j,k,1/q) [c]^k on every trusted column.
  for (double q : kBinomialQs) {
    const ModelParams model = QOsc{q, 1.0};
    double worst = 0.0;
    for (unsigned n = 0; n <= 3; ++n) {
      const double en = energy(model, n);
      for (unsigned j = 0; j <= kMaxDepth; ++j) {
        const auto terms = multicommutator_expansion(model, n, 0, j);
        for (std::size_t c = 0; c + n < opt.dim; ++c) {
          const double power_form = std::pow(en * std::pow(q, static_cast<double>(c)), j);
          double binomial_form = 0.0;
          for (const ExpansionTerm& t : terms) {
            binomial_form += t.coeff.real() * std::pow(q_number(c, q), static_cast<double>(t.k));
          }
          const double scale = std::max(std::abs(power_form), std::abs(binomial_form));
          if (scale > 0.0) worst = std::max(worst, std::abs(power_form - binomial_form) / scale);
        }
      }
    }
    json params = model_json(model);
    params.update({{"n_max", 3}, {"j_max", kMaxDepth}, {"dim", opt.dim}});
    out.push_back(make_record("multicommutator.closed_forms/" + model_tag(model), params, worst,
                              kClosedFormTol));
  }
  return out;
}

std::vector<CheckRecord> scaling_suite(const VerifyOptions& opt) {
  std::vector<CheckRecord> out;
  const std::vector<double> grid = uniform_grid(opt.tau_max, opt.steps);
  for (double q : kBinomialQs) {
    const QOsc qosc{q, 1.0};
    for (std::size_t j_col : {std::size_t{0}, std::size_t{1}, std::size_t{3}}) {
      std::vector<PhaseTrace> traces;
      std::vector<std::vector<double>> residuals;
      for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned m = 0; m <= 3; ++m) {
          if (m >= 1 && j_col == 0) continue;  // band entry vanishes
          // The band element is truncation-exact once j_col + n < D.
          const std::size_t dim = std::min(opt.dim, j_col + n + 2);
          std::vector<double> per_tau;
          per_tau.reserve(grid.size());
          for (double tau : grid) per_tau.push_back(scaling_phase_check(qosc, n, m, tau, j_col, dim));
          const double worst = *std::max_element(per_tau.begin(), per_tau.end());
          residuals.push_back(std::move(per_tau));
          json params = model_json(qosc);
          params.update({{"n", n}, {"m", m}, {"j_col", j_col}, {"tau_max", opt.tau_max},
                         {"steps", opt.steps}});
          char id[96];
          std::snprintf(id, sizeof id, "scaling.phase/%s/%s,j=%zu", model_tag(qosc).c_str(),
                        nm_tag(n, m).c_str(), j_col);
          out.push_back(make_record(id, params, worst, kScalingTol));
          traces.push_back(fock_phase_trace(qosc, n, m, j_col, grid, dim));
        }
      }
      // Residual identical across (n, m) at every tau.
      double spread = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        double lo = residuals.front()[i], hi = lo;
        for (const auto& r : residuals) {
          lo = std::min(lo, r[i]);
          hi = std::max(hi, r[i]);
        }
        spread = std::max(spread, hi - lo);
      }
      const std::vector<CollapsedCurve> curves = collapse_transform(traces);
      double deviation = collapse_deviation(curves);
      const double rate = std::pow(q, static_cast<double>(j_col));
      for (const CollapsedCurve& c : curves) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
          deviation = std::max(deviation, std::abs(c.values[i] - grid[i] * rate));
        }
      }
      json params = model_json(qosc);
      params.update({{"j_col", j_col}, {"curves", traces.size()}, {"tau_max", opt.tau_max},
                     {"steps", opt.steps}});
      char id[64];
      std::snprintf(id, sizeof id, "scaling.collapse/%s/j=%zu", model_tag(qosc).c_str(), j_col);
      out.push_back(make_record(id, params, deviation, kScalingTol));
      std::snprintf(id, sizeof id, "scaling.spread/%s/j=%zu", model_tag(qosc).c_str(), j_col);
      out.push_back(make_record(id, params, spread, kScalingSpreadTol));
    }
  }
  return out;
}

std::vector<CheckRecord> normal_order_suite(const VerifyOptions& opt) {
  std::vector<CheckRecord> out;
  for (double q : kClosureQs) {
    const ModelParams model = QOsc{q, 1.0};
    for (unsigned n = 0; n <= 3; ++n) {
      for (unsigned big_m = 0; big_m <= 5; ++big_m) {
        const FockOperator lam = build_lambda(model, {n, big_m}, opt.dim);
        const FockOperator ordered = normal_ordered_matrix(model, n, big_m, opt.dim);
        json params = model_json(model);
        params.update({{"n", n}, {"M", big_m}, {"dim", opt.dim}});
        out.push_back(make_record(
            "normal_order/" + model_tag(model) + "/n=" + std::to_string(n) + ",M=" + std::to_string(big_m),
            params,
            scaled_interior_residual(ordered.entries - lam.entries, lam.entries,
                                     std::max(lam.margin, ordered.margin)),
            kNormalOrderTol));
      }
    }
  }
  return out;
}

std::vector<CheckRecord> relation_suite(const VerifyOptions&) {
  std::vector<CheckRecord> out;
  for (double q : kClosureQs) {
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
      if (!(x < q_exponential_radius(q))) continue;
      double worst = 0.0;
      for (unsigned m = 0; m <= 5; ++m) worst = std::max(worst, relation_identity_residual(x, q, m));
      char id[64];
      std::snprintf(id, sizeof id, "relation/q=%g,x=%g", q, x);
      out.push_back(make_record(id, {{"q", q}, {"x", x}, {"m_max", 5}}, worst, kRelationTol));
    }
  }
  return out;
}

std::vector<CheckRecord> isomorphism_suite(const VerifyOptions&) {
  std::vector<CheckRecord> out;
  constexpr unsigned kJMax = 6;
  for (double ratio : {1.0, 5.0, 10.0, 100.0}) {
    double previous_q = std::numeric_limits<double>::infinity();
    double min_q = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (unsigned n = 1; n <= 4; ++n) {
      const IsoResiduals r = isomorphism_residuals(ratio, 1.0, n, kJMax);
      const IsoMap map = map_to_q(ratio, 1.0, n);
      min_q = std::min(min_q, map.q_of_n);
      monotone = monotone && map.q_of_n < previous_q;
      previous_q = map.q_of_n;
      json params = {{"omega1", ratio}, {"omega2", 1.0}, {"n", n}, {"j_max", kJMax},
                     {"q", map.q_of_n}, {"omega_q", map.omega_q}, {"p_n", map.p_n},
                     {"residuals",
                      {{"inverse_q_vs_p", r.inverse_q_vs_p},
                       {"z_difference", r.z_difference},
                       {"coefficient_table", r.coefficient_table},
                       {"coefficient_function", r.coefficient_function},
                       {"closure", r.closure}}}};
      char id[64];
      std::snprintf(id, sizeof id, "isomorphism/w1/w2=%g,n=%u", ratio, n);
      out.push_back(make_record(id, params, r.max(), kIsomorphismTol));
    }
    CheckRecord rec;
    char id[64];
    std::snprintf(id, sizeof id, "isomorphism.q_above_one/w1/w2=%g", ratio);
    rec.check_id = id;
    rec.params = {{"omega1", ratio}, {"omega2", 1.0}, {"n_max", 4}, {"min_q", min_q},
                  {"decreasing_in_n", monotone}};
    rec.max_residual = min_q > 1.0 ? 0.0 : 1.0 - min_q;
    rec.tolerance = 0.0;
    rec.pass = min_q > 1.0 && monotone;
    out.push_back(std::move(rec));
  }
  return out;
}

double grid_relative_error(const TimeSeries& a, const TimeSeries& ref) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - ref.values[i]));
    scale = std::max(scale, std::abs(ref.values[i]));
  }
  return scale == 0.0 ? diff : diff / scale;
}

std::vector<CheckRecord> dynamics_suite(const VerifyOptions& opt) {
  std::vector<CheckRecord> out;
  const std::vector<double> grid = uniform_grid(opt.tau_max, opt.steps);
  const std::complex<double> alpha{opt.alpha, 0.0};
  const QOsc qosc{1.2, 1.0};

  for (unsigned n = 0; n <= 3; ++n) {
    for (unsigned m = 0; m <= 3; ++m) {
      const LambdaIndex idx{n, m};
      json base = {{"n", n}, {"m", m}, {"alpha", opt.alpha}, {"tau_max", opt.tau_max},
                   {"steps", opt.steps}};

      const TimeSeries q_series = evolve_q_expectation(qosc, alpha, idx, grid, opt.tol);
      const TimeSeries q_oracle = evolve_fock_oracle(qosc, alpha, idx, grid);
      json qp = base;
      qp.update(model_json(qosc));
      qp["dim"] = q_oracle.terms;
      out.push_back(make_record("dynamics.oracle/" + model_tag(qosc) + "/" + nm_tag(n, m), qp,
                                grid_relative_error(q_series, q_oracle), kOracleTol));

      const TimeSeries a_series = evolve_anharmonic_expectation(kAnharmonic, alpha, idx, grid, opt.tol);
      const TimeSeries a_closed = evolve_anharmonic_closed(kAnharmonic, alpha, idx, grid);
      const TimeSeries a_oracle = evolve_fock_oracle(kAnharmonic, alpha, idx, grid);
      json ap = base;
      ap.update(model_json(kAnharmonic));
      ap["dim"] = a_oracle.terms;
      out.push_back(make_record("dynamics.oracle/" + model_tag(kAnharmonic) + "/" + nm_tag(n, m), ap,
                                grid_relative_error(a_series, a_oracle), kOracleTol));
      out.push_back(make_record("dynamics.closed_vs_series/" + model_tag(kAnharmonic) + "/" + nm_tag(n, m),
                                ap, grid_relative_error(a_closed, a_series), kClosedVsSeriesTol));

      // Harmonic bridge: q -> 1 of the q-model against w2 = 0.
      const QOsc near_one{1.0 + 1e-9, 1.0};
      const Anharmonic harmonic{1.0, 0.0};
      const TimeSeries bq = evolve_q_expectation(near_one, alpha, idx, grid, opt.tol);
      const TimeSeries ba = evolve_anharmonic_expectation(harmonic, alpha, idx, grid, opt.tol);
      json bp = base;
      bp.update({{"q", near_one.q}, {"omega_q", 1.0}, {"omega1", 1.0}, {"omega2", 0.0}});
      out.push_back(make_record("dynamics.bridge/" + nm_tag(n, m), bp, grid_relative_error(bq, ba),
                                kBridgeTol));
    }
  }
  return out;
}

using SuiteFn = std::function<std::vector<CheckRecord>(const VerifyOptions&)>;

const std::map<std::string, SuiteFn, std::less<>>& suite_table() {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"closure", closure_suite},
      {"multicommutator", multicommutator_suite},
      {"scaling", scaling_suite},
      {"normal-order", normal_order_suite},
      {"relation", relation_suite},
      {"isomorphism", isomorphism_suite},
      {"dynamics-oracle", dynamics_suite},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"closure",     "multicommutator", "scaling",
                                              "normal-order", "relation",        "isomorphism",
                                              "dynamics-oracle"};
  return names;
}

std::vector<CheckRecord> run_suite(std::string_view suite, const VerifyOptions& options) {
  if (suite == "all") {
    std::vector<CheckRecord> out;
    for (const std::string& name : suite_names()) {
      auto part = suite_table().find(name)->second(options);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }
  const auto it = suite_table().find(suite);
  if (it == suite_table().end()) {
    throw std::invalid_argument("unknown verification suite '" + std::string(suite) + "'");
  }
  return it->second(options);
}

bool all_pass(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

nlohmann::json to_json(const CheckRecord& record) {
  return {{"check_id", record.check_id},
          {"params", record.params},
          {"max_residual", record.max_residual},
          {"tolerance", record.tolerance},
          {"pass", record.pass}};
}

nlohmann::json to_json(const std::vector<CheckRecord>& records) {
  json arr = json::array();
  for (const CheckRecord& r : records) arr.push_back(to_json(r));
  return arr;
}

double scaled_interior_residual(const CMatrix& diff, const CMatrix& ref, std::size_t margin) {
  const double d = max_abs_interior(diff, margin);
  const double s = max_abs_interior(ref, margin);
  return s == 0.0 ? d : d / s;
}

std::vector<double> uniform_grid(double t_max, std::size_t steps) {
  if (steps < 2) return {0.0};
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

}  // namespace qdyn
