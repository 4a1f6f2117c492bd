#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qdyn/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qdyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  fs::create_directories(QDYN_TEST_TMP);
  return (fs::path(QDYN_TEST_TMP) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Runs a command to a file, re-runs it from its sidecar to another file and
// compares both data files byte for byte.
void check_round_trip(const std::string& command, std::vector<std::string> args, const std::string& stem) {
  const std::string first = tmp_path(stem + ".a");
  const std::string second = tmp_path(stem + ".b");
  args.insert(args.begin(), command);
  args.insert(args.end(), {"--out", first});
  const Outcome o1 = run(args);
  const Outcome o2 = run({command, "--config", qdyn::cli::sidecar_path(first), "--out", second});
  CHECK(o1.code == o2.code);
  const std::string a = slurp(first), b = slurp(second);
  CHECK(!a.empty());
  CHECK_MESSAGE(a == b, stem);
  const json meta = json::parse(slurp(qdyn::cli::sidecar_path(first)));
  CHECK(meta["config"]["command"] == command);
  CHECK(meta.contains("diagnostics"));
}

}  // namespace

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(qdyn::cli::format_number(1.0) == "1");
  CHECK(qdyn::cli::format_number(0.1) == "0.1");
  CHECK(qdyn::cli::format_number(1e-12) == "1e-12");
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    const std::string s = qdyn::cli::format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
}

TEST_CASE("evolve writes the documented CSV") {
  const Outcome o = run({"evolve", "--n", "0", "--m", "0", "--steps", "11"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "tau,re,im,abs,arg");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",1,0,1,0") != std::string::npos);

  const Outcome a = run({"evolve", "--model", "anharmonic", "--n", "1", "--steps", "3", "--alpha-re", "0.6",
                         "--alpha-im", "0.8"});
  REQUIRE(a.code == 0);
  CHECK(lines(a.out)[0] == "t,re,im,abs,arg");
  CHECK(lines(a.out)[1].rfind("0,0.6,-0.8,1,", 0) == 0);
}

TEST_CASE("evolve closed and series agree to 1e-10") {
  auto parse = [](const std::string& text) {
    std::vector<std::complex<double>> v;
    for (const std::string& l : lines(text)) {
      if (l[0] == 't') continue;
      double re = 0.0, im = 0.0;
      std::sscanf(l.c_str(), "%*[^,],%lf,%lf", &re, &im);
      v.emplace_back(re, im);
    }
    return v;
  };
  const std::vector<std::string> base{"evolve", "--model", "anharmonic", "--n", "2", "--m", "2"};
  auto closed_args = base, series_args = base;
  closed_args.insert(closed_args.end(), {"--method", "closed"});
  series_args.insert(series_args.end(), {"--method", "series"});
  const auto c = parse(run(closed_args).out), s = parse(run(series_args).out);
  REQUIRE(c.size() == 401);
  double d = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    d = std::max(d, std::abs(c[i] - s[i]));
    scale = std::max(scale, std::abs(s[i]));
  }
  CHECK(d / scale < 1e-10);
}

TEST_CASE("exit status contract") {
  const Outcome bad_flag = run({"evolve", "--nonsense"});
  CHECK(bad_flag.code == 2);
  const json rec = json::parse(bad_flag.err);
  CHECK(rec["error"] == "usage_error");

  const Outcome domain = run({"map", "--omega1", "10", "--omega2", "0", "--n", "1"});
  CHECK(domain.code == 2);
  CHECK(json::parse(domain.err)["error"] == "domain_error");

  CHECK(run({"evolve", "--model", "qosc", "--method", "closed"}).code == 2);
  CHECK(run({"evolve", "--q", "0"}).code == 2);
  CHECK(run({"verify", "--suite", "unknown"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--suite", "isomorphism"}).code == 0);
  // a loose tolerance cannot make checks fail, a truncated grid can for collapse
  CHECK(run({"collapse", "--steps", "3", "--q", "2"}).code == 1);
}

TEST_CASE("verify report schema") {
  const Outcome o = run({"verify", "--suite", "relation"});
  REQUIRE(o.code == 0);
  const json report = json::parse(o.out);
  REQUIRE(report.is_array());
  REQUIRE(!report.empty());
  for (const json& r : report) {
    CHECK(r["check_id"].is_string());
    CHECK(r["params"].is_object());
    CHECK(r["max_residual"].is_number());
    CHECK(r["tolerance"].is_number());
    CHECK(r["pass"] == true);
  }
}

TEST_CASE("map output") {
  const Outcome o = run({"map", "--omega1", "10", "--omega2", "1", "--n", "1"});
  REQUIRE(o.code == 0);
  const json m = json::parse(o.out);
  CHECK(m["q"].get<double>() == doctest::Approx(1.181818).epsilon(1e-6));
  CHECK(m["omega_q"].get<double>() == doctest::Approx(11.0));
  CHECK(m["residuals"]["max"].get<double>() < 1e-12);
}

TEST_CASE("collapse output") {
  const Outcome single = run({"collapse", "--q", "1.2", "--j-col", "3", "--pairs", "1:0", "--steps", "21"});
  REQUIRE(single.code == 0);
  const auto rows = lines(single.out);
  CHECK(rows.front() == "tau,n1_m0");
  CHECK(rows.back().rfind("max_pairwise_deviation,", 0) == 0);
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    double tau = 0.0, v = 0.0;
    std::sscanf(rows[i].c_str(), "%lf,%lf", &tau, &v);
    CHECK(v == doctest::Approx(tau * std::pow(1.2, 3)).epsilon(1e-12));
  }
  const Outcome many = run({"collapse", "--q", "2", "--j-col", "1", "--pairs", "1:0,2:1,3:2", "--out",
                            tmp_path("collapse.csv")});
  REQUIRE(many.code == 0);
  const json meta = json::parse(slurp(tmp_path("collapse.csv.meta.json")));
  CHECK(meta["diagnostics"]["max_pairwise_deviation"].get<double>() < 1e-9);

  const Outcome coarse = run({"collapse", "--q", "2", "--pairs", "1:0,2:0", "--steps", "3"});
  CHECK(coarse.code == 1);
  CHECK(lines(coarse.err).size() == 2);
  CHECK(json::parse(lines(coarse.err)[0])["error"] == "unwrap_error");
}

TEST_CASE("sweep is deterministic and a one-point sweep equals the single command") {
  const std::vector<std::string> args{"sweep", "--target", "map", "--omega1-list", "1,5,10,100",
                                      "--n-list", "1,2,3,4", "--omega2", "1"};
  auto one = args, four = args;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const Outcome a = run(one), b = run(four);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  for (const std::string& row : lines(a.out)) {
    if (row.find("residual_max") == std::string::npos) continue;
    const double v = std::stod(row.substr(row.find("residual_max,") + 13));
    CHECK(v < 1e-12);
  }

  const json single = json::parse(run({"map", "--omega1", "5", "--omega2", "1", "--n", "3"}).out);
  const Outcome p = run({"sweep", "--target", "map", "--omega1", "5", "--omega2", "1", "--n", "3"});
  bool seen = false;
  for (const std::string& row : lines(p.out)) {
    if (row.rfind("0,5,1,3,q,", 0) == 0) {
      seen = true;
      CHECK(row == "0,5,1,3,q," + qdyn::cli::format_number(single["q"].get<double>()) + ",");
    }
  }
  CHECK(seen);
}

TEST_CASE("sweep records per-point errors in-row") {
  const Outcome o = run({"sweep", "--target", "evolve", "--q-list", "0.5", "--alpha-list", "0.5,5"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  CHECK(rows[0] == "point,q,alpha_re,n,m,metric,value,error");
  CHECK(rows.back().find("convergence_error") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  const std::string cfg = tmp_path("override.json");
  std::ofstream(cfg) << R"({"omega1": 10, "omega2": 1, "n": 2})";
  const json m = json::parse(run({"map", "--config", cfg, "--n", "1"}).out);
  CHECK(m["n"] == 1);
  CHECK(m["omega_q"].get<double>() == doctest::Approx(11.0));

  std::ofstream(cfg) << R"({"omega1": 10, "bogus": 1})";
  CHECK(run({"map", "--config", cfg}).code == 2);
  std::ofstream(cfg) << R"({"command": "evolve"})";
  CHECK(run({"map", "--config", cfg}).code == 2);
  CHECK(run({"map", "--config", tmp_path("missing.json")}).code == 2);
}

TEST_CASE("outputs round-trip from their sidecars") {
  check_round_trip("evolve", {"--q", "2", "--n", "2", "--m", "1", "--alpha-im", "0.3"}, "evolve_q");
  check_round_trip("evolve", {"--model", "anharmonic", "--method", "closed", "--n", "3", "--format", "json"},
                   "evolve_a");
  check_round_trip("map", {"--omega1", "5", "--omega2", "0.5", "--n", "2"}, "map");
  check_round_trip("collapse", {"--q", "1.2", "--j-col", "1", "--pairs", "1:0,2:1"}, "collapse");
  check_round_trip("sweep", {"--target", "oracle", "--q-list", "1.2,2", "--n-list", "1,2", "--threads", "3"},
                   "sweep");
  check_round_trip("verify", {"--suite", "closure"}, "verify");
}
