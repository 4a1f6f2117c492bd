#include <doctest.h>

#include <stdexcept>

#include "qdyn/verify.hpp"

using namespace qdyn;

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(10.0, 401);
  REQUIRE(g.size() == 401);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 10.0);
  CHECK(g[200] == doctest::Approx(5.0));
}

TEST_CASE("scaled residual uses only trusted columns") {
  CMatrix ref(4), diff(4);
  ref(1, 0) = 2.0;
  ref(3, 3) = 1e6;  // outside the trusted columns for margin 1
  diff(1, 0) = 1e-3;
  diff(3, 3) = 5.0;
  CHECK(scaled_interior_residual(diff, ref, 1) == doctest::Approx(5e-4));
  CHECK(scaled_interior_residual(CMatrix(4), CMatrix(4), 0) == 0.0);
}

TEST_CASE("every suite passes at defaults") {
  for (const std::string& s : suite_names()) {
    const auto records = run_suite(s);
    CHECK_MESSAGE(!records.empty(), s);
    CHECK_MESSAGE(all_pass(records), s);
    for (const CheckRecord& r : records) {
      const nlohmann::json j = to_json(r);
      CHECK(j.contains("check_id"));
      CHECK(j.contains("params"));
      CHECK(j["max_residual"].is_number());
      CHECK(j["tolerance"].is_number());
      CHECK(j["pass"].is_boolean());
    }
  }
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
}

TEST_CASE("failing records are reported as failures") {
  std::vector<CheckRecord> r(2);
  r[0].pass = true;
  CHECK_FALSE(all_pass(r));
  r[1].pass = true;
  CHECK(all_pass(r));
}
