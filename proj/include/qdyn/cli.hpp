#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdyn/model.hpp"

namespace qdyn::cli {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Fully resolved parameters of one command. Every field is echoed into the
/// sidecar, so a run can be repeated from its output alone.
struct RunConfig {
  std::string command;
  std::string model = "qosc";
  double q = 1.2;
  double omega = 1.0;
  double omega1 = 10.0;
  double omega2 = 1.0;
  double alpha_re = 0.8;
  double alpha_im = 0.0;
  unsigned n = 1;
  unsigned m = 0;
  double tau_max = 10.0;
  std::size_t steps = 401;
  std::size_t dim = 64;
  double tol = 1e-12;
  std::string out;
  std::string format = "csv";
  std::string method = "series";
  std::string suite = "all";
  std::size_t j_col = 0;
  std::vector<std::pair<unsigned, unsigned>> pairs{{1, 0}, {2, 0}, {3, 0}};
  std::string target = "map";
  std::vector<double> q_list;
  std::vector<double> omega1_list;
  std::vector<double> alpha_list;
  std::vector<unsigned> n_list;
  unsigned threads = 0;

  ModelParams model_params() const;
  std::complex<double> alpha() const { return {alpha_re, alpha_im}; }
};

nlohmann::json to_json(const RunConfig& config);

/// Strict: unknown keys and wrong types raise UsageError. Semantic checks
/// (ranges, enumerations) are done by validate().
RunConfig config_from_json(const nlohmann::json& j);

void validate(const RunConfig& config);

/// Reads a config file. A sidecar written by a previous run is accepted too;
/// its "config" member is used.
nlohmann::json load_config_file(const std::string& path);

struct CommandResult {
  std::string data;
  nlohmann::json diagnostics = nlohmann::json::object();
  int exit_code = 0;
  std::vector<nlohmann::json> error_records;
};

CommandResult cmd_evolve(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_map(const RunConfig& config);
CommandResult cmd_collapse(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);

CommandResult dispatch(const RunConfig& config);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double x);

std::string sidecar_path(const std::string& out);

nlohmann::json error_record(std::string_view kind, std::string_view message);

/// Full front end: args excludes the program name. Returns the exit status
/// (0 pass, 1 verification failure, 2 usage or domain error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdyn::cli
