#include <charconv>
#include <cmath>
#include <ostream>

#include <CLI11.hpp>

#include "output.hpp"
#include "qdyn/cli.hpp"
#include "qdyn/errors.hpp"

namespace qdyn::cli {
namespace {

using nlohmann::json;

enum class Kind { real, count, text, real_list, count_list, pair_list };

struct FlagSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
};

const FlagSpec kFlags[] = {
    {"--model", "model", Kind::text, "qosc | anharmonic"},
    {"--q", "q", Kind::real, "deformation parameter q"},
    {"--omega", "omega", Kind::real, "q-oscillator frequency omega_q"},
    {"--omega1", "omega1", Kind::real, "anharmonic linear frequency"},
    {"--omega2", "omega2", Kind::real, "anharmonic quadratic frequency"},
    {"--alpha-re", "alpha_re", Kind::real, "coherent amplitude, real part"},
    {"--alpha-im", "alpha_im", Kind::real, "coherent amplitude, imaginary part"},
    {"--n", "n", Kind::count, "operator index n (power of a^dag)"},
    {"--m", "m", Kind::count, "operator index m (power of the number operator)"},
    {"--tau-max", "tau_max", Kind::real, "end of the time grid"},
    {"--steps", "steps", Kind::count, "number of grid points"},
    {"--dim", "dim", Kind::count, "Fock truncation dimension"},
    {"--tol", "tol", Kind::real, "tail tolerance of truncated series"},
    {"--out", "out", Kind::text, "output file (stdout when absent); sidecar at <out>.meta.json"},
    {"--format", "format", Kind::text, "csv | json (tables only)"},
    {"--method", "method", Kind::text, "closed | series (anharmonic evolve)"},
    {"--suite", "suite", Kind::text, "verification suite or 'all'"},
    {"--j-col", "j_col", Kind::count, "Fock column of the collapse traces"},
    {"--pairs", "pairs", Kind::pair_list, "collapse curves, e.g. 1:0,2:1"},
    {"--target", "target", Kind::text, "sweep target: map | evolve | oracle"},
    {"--q-list", "q_list", Kind::real_list, "sweep axis over q"},
    {"--omega1-list", "omega1_list", Kind::real_list, "sweep axis over omega1"},
    {"--alpha-list", "alpha_list", Kind::real_list, "sweep axis over alpha_re"},
    {"--n-list", "n_list", Kind::count_list, "sweep axis over n"},
    {"--threads", "threads", Kind::count, "sweep worker threads (0 = hardware)"},
};

double parse_real(const std::string& flag, std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError(flag + " expects a finite number, got '" + std::string(s) + "'");
  }
  return v;
}

unsigned long long parse_count(const std::string& flag, std::string_view s) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError(flag + " expects a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

json flag_value(const FlagSpec& spec, const std::string& raw) {
  const std::string flag = spec.flag;
  switch (spec.kind) {
    case Kind::real:
      return parse_real(flag, raw);
    case Kind::count:
      return parse_count(flag, raw);
    case Kind::text:
      return raw;
    case Kind::real_list: {
      json arr = json::array();
      for (std::string_view p : split(raw, ',')) arr.push_back(parse_real(flag, p));
      return arr;
    }
    case Kind::count_list: {
      json arr = json::array();
      for (std::string_view p : split(raw, ',')) arr.push_back(parse_count(flag, p));
      return arr;
    }
    case Kind::pair_list: {
      json arr = json::array();
      for (std::string_view p : split(raw, ',')) {
        const auto nm = split(p, ':');
        if (nm.size() != 2) throw UsageError(flag + " expects n:m pairs, got '" + std::string(p) + "'");
        arr.push_back({parse_count(flag, nm[0]), parse_count(flag, nm[1])});
      }
      return arr;
    }
  }
  return nullptr;
}

void emit_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << error_record(kind, message).dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-deformed and anharmonic oscillator dynamics", "qdyn"};
  app.require_subcommand(1);

  const std::pair<const char*, const char*> commands[] = {
      {"evolve", "expectation value trace <Lambda^{n,m}(t)> in a coherent state"},
      {"verify", "run verification suites against the Fock-matrix oracle"},
      {"map", "q-oscillator parameters isomorphic to an anharmonic oscillator"},
      {"collapse", "normalized phase curves of Lambda^{n,m} band elements"},
      {"sweep", "evaluate a command over parameter grids"},
  };

  std::vector<std::string> raw(std::size(kFlags));
  std::string config_path;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      sub->add_option(kFlags[i].flag, raw[i], kFlags[i].help);
    }
    sub->add_option("--config", config_path, "JSON config file or a previous run's sidecar");
    subs.push_back(sub);
  }

  std::vector<const char*> argv{"qdyn"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage_error", e.what());
    return 2;
  }

  CLI::App* sub = nullptr;
  for (CLI::App* s : subs) {
    if (s->parsed()) sub = s;
  }

  RunConfig config;
  try {
    json merged = to_json(RunConfig{});
    if (!config_path.empty()) {
      const json file = load_config_file(config_path);
      if (!file.is_object()) throw UsageError("config file must hold a JSON object");
      if (file.contains("command") && file["command"] != sub->get_name()) {
        throw UsageError("config file was written for command '" + file["command"].dump() + "'");
      }
      config_from_json(file);  // type and key check
      merged.merge_patch(file);
    }
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      if (sub->count(kFlags[i].flag) > 0) merged[kFlags[i].key] = flag_value(kFlags[i], raw[i]);
    }
    merged["command"] = sub->get_name();
    config = config_from_json(merged);
    validate(config);
  } catch (const std::exception& e) {
    emit_error(err, "usage_error", e.what());
    return 2;
  }

  CommandResult result;
  try {
    result = dispatch(config);
  } catch (const UsageError& e) {
    emit_error(err, "usage_error", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error(err, error_kind(e), e.what());
    return 2;
  }

  for (const json& rec : result.error_records) err << rec.dump() << '\n';

  try {
    if (config.out.empty()) {
      out << result.data;
    } else {
      write_text_file(config.out, result.data);
      const json sidecar = {{"config", to_json(config)}, {"diagnostics", result.diagnostics},
                            {"exit_code", result.exit_code}};
      write_text_file(sidecar_path(config.out), sidecar.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    emit_error(err, "io_error", e.what());
    return 2;
  }
  return result.exit_code;
}

}  // namespace qdyn::cli
