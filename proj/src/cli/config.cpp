#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qdyn/cli.hpp"
#include "qdyn/verify.hpp"

namespace qdyn::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kCommands{"evolve", "verify", "map", "collapse", "sweep"};
const std::set<std::string> kModels{"qosc", "anharmonic"};
const std::set<std::string> kFormats{"csv", "json"};
const std::set<std::string> kMethods{"closed", "series"};
const std::set<std::string> kTargets{"map", "evolve", "oracle"};

template <typename T>
void read_field(const json& j, const char* key, T& dst) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw UsageError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_unsigned()) throw UsageError("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw UsageError("");
    } else {
      if (!it->is_array()) throw UsageError("");
    }
    dst = it->get<T>();
  } catch (const std::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

ModelParams RunConfig::model_params() const {
  if (model == "anharmonic") return Anharmonic{omega1, omega2};
  return QOsc{q, omega};
}

json to_json(const RunConfig& c) {
  json pairs = json::array();
  for (const auto& [n, m] : c.pairs) pairs.push_back({n, m});
  return {{"command", c.command},   {"model", c.model},       {"q", c.q},
          {"omega", c.omega},       {"omega1", c.omega1},     {"omega2", c.omega2},
          {"alpha_re", c.alpha_re}, {"alpha_im", c.alpha_im}, {"n", c.n},
          {"m", c.m},               {"tau_max", c.tau_max},   {"steps", c.steps},
          {"dim", c.dim},           {"tol", c.tol},           {"out", c.out},
          {"format", c.format},     {"method", c.method},     {"suite", c.suite},
          {"j_col", c.j_col},       {"pairs", pairs},         {"target", c.target},
          {"q_list", c.q_list},     {"omega1_list", c.omega1_list},
          {"alpha_list", c.alpha_list},                       {"n_list", c.n_list},
          {"threads", c.threads}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  const json known = to_json(RunConfig{});
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw UsageError("unknown config key '" + key + "'");
  }
  RunConfig c;
  read_field(j, "command", c.command);
  read_field(j, "model", c.model);
  read_field(j, "q", c.q);
  read_field(j, "omega", c.omega);
  read_field(j, "omega1", c.omega1);
  read_field(j, "omega2", c.omega2);
  read_field(j, "alpha_re", c.alpha_re);
  read_field(j, "alpha_im", c.alpha_im);
  read_field(j, "n", c.n);
  read_field(j, "m", c.m);
  read_field(j, "tau_max", c.tau_max);
  read_field(j, "steps", c.steps);
  read_field(j, "dim", c.dim);
  read_field(j, "tol", c.tol);
  read_field(j, "out", c.out);
  read_field(j, "format", c.format);
  read_field(j, "method", c.method);
  read_field(j, "suite", c.suite);
  read_field(j, "j_col", c.j_col);
  read_field(j, "target", c.target);
  read_field(j, "q_list", c.q_list);
  read_field(j, "omega1_list", c.omega1_list);
  read_field(j, "alpha_list", c.alpha_list);
  read_field(j, "n_list", c.n_list);
  read_field(j, "threads", c.threads);
  if (const auto it = j.find("pairs"); it != j.end()) {
    if (!it->is_array()) throw UsageError("config key 'pairs' must be an array of [n, m]");
    c.pairs.clear();
    for (const json& p : *it) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
        throw UsageError("config key 'pairs' must be an array of [n, m]");
      }
      c.pairs.emplace_back(p[0].get<unsigned>(), p[1].get<unsigned>());
    }
  }
  return c;
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
  };
  require(kCommands.count(c.command) == 1, "unknown command '" + c.command + "'");
  require(kModels.count(c.model) == 1, "--model must be qosc or anharmonic");
  require(kFormats.count(c.format) == 1, "--format must be csv or json");
  require(kMethods.count(c.method) == 1, "--method must be closed or series");
  require(kTargets.count(c.target) == 1, "--target must be map, evolve or oracle");
  require(c.suite == "all" || std::find(suite_names().begin(), suite_names().end(), c.suite) !=
                                  suite_names().end(),
          "unknown suite '" + c.suite + "'");
  require(std::isfinite(c.tau_max) && c.tau_max > 0.0, "--tau-max must be finite and > 0");
  require(c.steps >= 2, "--steps must be at least 2");
  require(c.dim >= 2, "--dim must be at least 2");
  require(c.tol > 0.0 && c.tol < 1.0, "--tol must lie in (0, 1)");
  require(std::isfinite(c.alpha_re) && std::isfinite(c.alpha_im), "alpha must be finite");
  require(!c.pairs.empty(), "--pairs must list at least one n:m pair");
  require(c.threads <= 256, "--threads must be <= 256");
  if (c.method == "closed" && c.command == "evolve") {
    require(c.model == "anharmonic", "--method closed is only available for the anharmonic model");
  }
}

json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("config") && j["config"].is_object()) return j["config"];
  return j;
}

}  // namespace qdyn::cli
