#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "output.hpp"
#include "qdyn/cli.hpp"
#include "qdyn/dynamics.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/isomap.hpp"
#include "qdyn/verify.hpp"

namespace qdyn::cli {
namespace {

using nlohmann::json;
using cplx = std::complex<double>;

constexpr unsigned kMapDepth = 6;

std::string num(double x) { return format_number(x); }

TimeSeries run_evolution(const RunConfig& c, cplx alpha, const std::vector<double>& grid) {
  const LambdaIndex idx{c.n, c.m};
  if (c.model == "qosc") return evolve_q_expectation(QOsc{c.q, c.omega}, alpha, idx, grid, c.tol);
  const Anharmonic a{c.omega1, c.omega2};
  if (c.method == "closed") return evolve_anharmonic_closed(a, alpha, idx, grid);
  return evolve_anharmonic_expectation(a, alpha, idx, grid, c.tol);
}

double relative_grid_error(const TimeSeries& a, const TimeSeries& ref) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - ref.values[i]));
    scale = std::max(scale, std::abs(ref.values[i]));
  }
  return scale == 0.0 ? diff : diff / scale;
}

json map_record(const IsoMap& map, const IsoResiduals& r) {
  return {{"n", map.n},
          {"q", map.q_of_n},
          {"omega_q", map.omega_q},
          {"p_n", map.p_n},
          {"residuals",
           {{"inverse_q_vs_p", r.inverse_q_vs_p},
            {"z_difference", r.z_difference},
            {"coefficient_table", r.coefficient_table},
            {"coefficient_function", r.coefficient_function},
            {"closure", r.closure},
            {"max", r.max()}}}};
}

std::string curve_label(unsigned n, unsigned m) {
  return "n" + std::to_string(n) + "_m" + std::to_string(m);
}

using Metrics = std::vector<std::pair<std::string, double>>;

// One sweep grid point: its axis values and the computation of its metrics.
struct SweepJob {
  std::vector<std::string> axes;
  std::function<Metrics()> run;
};

struct SweepResult {
  Metrics metrics;
  std::string error;
};

template <typename T>
std::vector<T> or_default(const std::vector<T>& list, T fallback) {
  return list.empty() ? std::vector<T>{fallback} : list;
}

}  // namespace

CommandResult cmd_evolve(const RunConfig& c) {
  const std::vector<double> grid = uniform_grid(c.tau_max, c.steps);
  const TimeSeries ts = run_evolution(c, c.alpha(), grid);

  Table table;
  table.columns = {c.model == "qosc" ? "tau" : "t", "re", "im", "abs", "arg"};
  table.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx v = ts.values[i];
    table.rows.push_back({num(grid[i]), num(v.real()), num(v.imag()), num(std::abs(v)), num(std::arg(v))});
  }

  CommandResult res;
  res.data = table.render(c.format);
  res.diagnostics = {{"truncation_tail", ts.truncation_tail},
                     {"terms", ts.terms},
                     {"method", c.model == "qosc" ? "series" : c.method},
                     {"time_variable", table.columns.front()},
                     {"samples", grid.size()}};
  return res;
}

CommandResult cmd_verify(const RunConfig& c) {
  VerifyOptions opt;
  opt.dim = c.dim;
  opt.tol = c.tol;
  opt.tau_max = c.tau_max;
  opt.steps = c.steps;
  opt.alpha = std::abs(c.alpha());
  const std::vector<CheckRecord> records = run_suite(c.suite, opt);

  CommandResult res;
  res.data = to_json(records).dump(2) + "\n";
  json failed = json::array();
  for (const CheckRecord& r : records) {
    if (!r.pass) failed.push_back(r.check_id);
  }
  res.diagnostics = {{"checks", records.size()}, {"failed", failed.size()}, {"failed_ids", failed}};
  res.exit_code = all_pass(records) ? 0 : 1;
  return res;
}

CommandResult cmd_map(const RunConfig& c) {
  const IsoMap map = map_to_q(c.omega1, c.omega2, c.n);
  const IsoResiduals r = isomorphism_residuals(c.omega1, c.omega2, c.n, kMapDepth);
  CommandResult res;
  res.data = map_record(map, r).dump(2) + "\n";
  res.diagnostics = {{"j_max", kMapDepth}, {"time_grid_points", isomorphism_time_grid(c.omega2).size()}};
  return res;
}

CommandResult cmd_collapse(const RunConfig& c) {
  const QOsc qosc{c.q, c.omega};
  const std::vector<double> grid = uniform_grid(c.tau_max, c.steps);

  std::vector<std::string> labels;
  std::vector<CollapsedCurve> curves;
  std::vector<std::size_t> curve_column;
  std::vector<std::string> failures(c.pairs.size());
  CommandResult res;
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    const auto [n, m] = c.pairs[i];
    labels.push_back(curve_label(n, m));
    try {
      curves.push_back(normalize_phase_curve(fock_phase_trace(qosc, n, m, c.j_col, grid, c.dim)));
      curve_column.push_back(i);
    } catch (const std::exception& e) {
      failures[i] = std::string(error_kind(e));
      json rec = error_record(error_kind(e), e.what());
      rec["curve"] = labels.back();
      res.error_records.push_back(std::move(rec));
    }
  }

  Table table;
  table.columns.push_back("tau");
  for (const std::string& l : labels) table.columns.push_back(l);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    std::vector<std::string> row(labels.size() + 1);
    row[0] = num(grid[t]);
    for (std::size_t k = 0; k < curves.size(); ++k) row[curve_column[k] + 1] = num(curves[k].values[t]);
    table.rows.push_back(std::move(row));
  }

  std::vector<std::string> summary(labels.size() + 1);
  summary[0] = "max_pairwise_deviation";
  double overall = 0.0;
  for (std::size_t a = 0; a < curves.size(); ++a) {
    double dev = 0.0;
    for (std::size_t b = 0; b < curves.size(); ++b) {
      for (std::size_t t = 0; t < grid.size(); ++t) {
        dev = std::max(dev, std::abs(curves[a].values[t] - curves[b].values[t]));
      }
    }
    overall = std::max(overall, dev);
    summary[curve_column[a] + 1] = num(dev);
  }
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) summary[i + 1] = failures[i];
  }
  table.rows.push_back(std::move(summary));

  double reference_dev = 0.0;
  const double rate = std::pow(c.q, static_cast<double>(c.j_col));
  for (const CollapsedCurve& cv : curves) {
    for (std::size_t t = 0; t < grid.size(); ++t) {
      reference_dev = std::max(reference_dev, std::abs(cv.values[t] - grid[t] * rate));
    }
  }

  res.data = table.render(c.format);
  res.diagnostics = {{"max_pairwise_deviation", overall},
                     {"max_deviation_from_tau_q_pow_j", reference_dev},
                     {"curves", labels.size()},
                     {"failed_curves", res.error_records.size()}};
  res.exit_code = res.error_records.empty() ? 0 : 1;
  return res;
}

CommandResult cmd_sweep(const RunConfig& c) {
  std::vector<std::string> axis_names;
  std::vector<SweepJob> jobs;

  if (c.target == "map") {
    axis_names = {"omega1", "omega2", "n"};
    for (double w1 : or_default(c.omega1_list, c.omega1)) {
      for (unsigned n : or_default(c.n_list, c.n)) {
        jobs.push_back({{num(w1), num(c.omega2), std::to_string(n)}, [=] {
          const IsoMap map = map_to_q(w1, c.omega2, n);
          const IsoResiduals r = isomorphism_residuals(w1, c.omega2, n, kMapDepth);
          return Metrics{{"q", map.q_of_n},
                       {"omega_q", map.omega_q},
                       {"p_n", map.p_n},
                       {"inverse_q_vs_p", r.inverse_q_vs_p},
                       {"z_difference", r.z_difference},
                       {"coefficient_table", r.coefficient_table},
                       {"coefficient_function", r.coefficient_function},
                       {"closure", r.closure},
                       {"residual_max", r.max()}};
        }});
      }
    }
  } else {
    const bool qosc = c.model == "qosc";
    axis_names = {qosc ? "q" : "omega1", "alpha_re", "n", "m"};
    const std::vector<double> first_axis = qosc ? or_default(c.q_list, c.q) : or_default(c.omega1_list, c.omega1);
    const std::vector<double> grid = uniform_grid(c.tau_max, c.steps);
    for (double x : first_axis) {
      for (double a : or_default(c.alpha_list, c.alpha_re)) {
        for (unsigned n : or_default(c.n_list, c.n)) {
          jobs.push_back({{num(x), num(a), std::to_string(n), std::to_string(c.m)}, [=] {
            RunConfig point = c;
            (qosc ? point.q : point.omega1) = x;
            point.alpha_re = a;
            point.n = n;
            const TimeSeries ts = run_evolution(point, point.alpha(), grid);
            if (c.target == "evolve") {
              double peak = 0.0;
              for (const cplx& v : ts.values) peak = std::max(peak, std::abs(v));
              return Metrics{{"abs_max", peak},
                           {"re_final", ts.values.back().real()},
                           {"im_final", ts.values.back().imag()},
                           {"truncation_tail", ts.truncation_tail},
                           {"terms", static_cast<double>(ts.terms)}};
            }
            const TimeSeries oracle = evolve_fock_oracle(point.model_params(), point.alpha(),
                                                         {point.n, point.m}, grid);
            return Metrics{{"relative_error", relative_grid_error(ts, oracle)},
                           {"oracle_dim", static_cast<double>(oracle.terms)}};
          }});
        }
      }
    }
  }

  std::vector<SweepResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i].metrics = jobs[i].run();
      } catch (const std::exception& e) {
        results[i].error = std::string(error_kind(e)) + ": " + e.what();
      }
    }
  };
  unsigned n_threads = c.threads != 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Table table;
  table.columns.push_back("point");
  table.columns.insert(table.columns.end(), axis_names.begin(), axis_names.end());
  table.columns.insert(table.columns.end(), {"metric", "value", "error"});
  std::size_t failed_points = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SweepResult& p = results[i];
    std::vector<std::string> lead{std::to_string(i)};
    lead.insert(lead.end(), jobs[i].axes.begin(), jobs[i].axes.end());
    if (!p.error.empty()) {
      ++failed_points;
      std::vector<std::string> row = lead;
      row.insert(row.end(), {"", "", p.error});
      table.rows.push_back(std::move(row));
      continue;
    }
    for (const auto& [metric, value] : p.metrics) {
      std::vector<std::string> row = lead;
      row.insert(row.end(), {metric, num(value), ""});
      table.rows.push_back(std::move(row));
    }
  }

  CommandResult res;
  res.data = table.render(c.format);
  res.diagnostics = {{"points", jobs.size()}, {"failed_points", failed_points}, {"target", c.target}};
  return res;
}

CommandResult dispatch(const RunConfig& c) {
  if (c.command == "evolve") return cmd_evolve(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "map") return cmd_map(c);
  if (c.command == "collapse") return cmd_collapse(c);
  if (c.command == "sweep") return cmd_sweep(c);
  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace qdyn::cli
