#include <doctest.h>

#include "qdyn/dynamics.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/qcore.hpp"
#include "qdyn/verify.hpp"
#include "support.hpp"

using namespace qdyn;
using testing::cplx;

namespace {

double grid_rel_error(const TimeSeries& a, const TimeSeries& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
    s = std::max(s, std::abs(b.values[i]));
  }
  return d / s;
}

}  // namespace

TEST_CASE("trivial expectations") {
  const auto grid = uniform_grid(10.0, 51);
  const TimeSeries one = evolve_q_expectation(QOsc{1.2, 1.0}, {0.8, 0.0}, {0, 0}, grid, 1e-12);
  for (const cplx& v : one.values) {
    CHECK(v.real() == 1.0);
    CHECK(v.imag() == 0.0);
  }
  const cplx alpha{0.5, 0.3};
  const TimeSeries a = evolve_anharmonic_expectation(Anharmonic{10.0, 1.0}, alpha, {1, 0}, grid, 1e-12);
  CHECK(std::abs(a.values[0]) == doctest::Approx(std::abs(alpha)));
  // <N> is conserved: n = 0, m = 1 stays |alpha|^2
  const TimeSeries nmean = evolve_q_expectation(QOsc{2.0, 1.0}, alpha, {0, 1}, grid, 1e-12);
  for (const cplx& v : nmean.values) CHECK(v.real() == doctest::Approx(std::norm(alpha)).epsilon(1e-12));
}

TEST_CASE("harmonic limit is a rigid rotation") {
  // q = 1: <(a^dag)^n>(tau) = (alpha*)^n e^{i n tau}
  const auto grid = uniform_grid(5.0, 21);
  const cplx alpha{0.7, 0.2};
  const TimeSeries ts = evolve_q_expectation(QOsc{1.0, 1.0}, alpha, {2, 0}, grid, 1e-13);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx expected = std::pow(std::conj(alpha), 2) * std::polar(1.0, 2.0 * grid[i]);
    CHECK(std::abs(ts.values[i] - expected) < 1e-12);
  }
}

TEST_CASE("series, closed form and Fock oracle agree") {
  const auto grid = uniform_grid(10.0, 101);
  const cplx alpha{0.8, 0.0};
  for (unsigned n = 0; n <= 2; ++n) {
    for (unsigned m = 0; m <= 2; ++m) {
      const TimeSeries qs = evolve_q_expectation(QOsc{1.2, 1.0}, alpha, {n, m}, grid, 1e-12);
      const TimeSeries qo = evolve_fock_oracle(QOsc{1.2, 1.0}, alpha, {n, m}, grid);
      CHECK(grid_rel_error(qs, qo) < 1e-10);
      const Anharmonic an{10.0, 1.0};
      const TimeSeries as = evolve_anharmonic_expectation(an, alpha, {n, m}, grid, 1e-12);
      const TimeSeries ac = evolve_anharmonic_closed(an, alpha, {n, m}, grid);
      const TimeSeries ao = evolve_fock_oracle(an, alpha, {n, m}, grid);
      CHECK(grid_rel_error(ac, as) < 1e-10);
      CHECK(grid_rel_error(as, ao) < 1e-10);
    }
  }
}

TEST_CASE("time grid must increase") {
  const std::vector<double> bad{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(evolve_q_expectation(QOsc{1.2, 1.0}, {0.8, 0.0}, {1, 0}, bad, 1e-12), DomainError);
}

TEST_CASE("relation identity residual is small inside the radius") {
  for (double q : {0.5, 1.0, 2.0}) {
    for (unsigned m = 0; m <= 5; ++m) CHECK(relation_identity_residual(0.5, q, m) < 1e-12);
  }
}

TEST_CASE("phase trace and collapse") {
  const auto grid = uniform_grid(10.0, 401);
  const QOsc p{2.0, 1.0};
  std::vector<PhaseTrace> traces;
  for (unsigned n = 1; n <= 3; ++n) traces.push_back(fock_phase_trace(p, n, n - 1, 1, grid, 8));
  const auto curves = collapse_transform(traces);
  CHECK(collapse_deviation(curves) < 1e-9);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(curves[0].values[i] == doctest::Approx(2.0 * grid[i]));

  const auto coarse = uniform_grid(10.0, 3);
  const PhaseTrace t = fock_phase_trace(p, 1, 0, 0, coarse, 4);
  CHECK_THROWS_AS(normalize_phase_curve(t), UnwrapError);
  CHECK_THROWS_AS(fock_phase_trace(p, 1, 1, 0, grid, 4), DomainError);
}

TEST_CASE("tau = 0 reduces to the q-Stirling polynomial") {
  const std::vector<double> grid{0.0, 1.0};
  const cplx alpha{0.8, 0.0};
  const double x = std::norm(alpha);
  for (double q : {0.5, 1.2, 2.0}) {
    for (unsigned n = 0; n <= 3; ++n) {
      for (unsigned m = 0; m <= 4; ++m) {
        const TimeSeries ts = evolve_q_expectation(QOsc{q, 1.0}, alpha, {n, m}, grid, 1e-14);
        double poly = 0.0;
        for (unsigned r = 0; r <= m; ++r) poly += q_stirling2(r, m, q) * std::pow(x, r);
        const cplx expected = std::pow(std::conj(alpha), n) * poly;
        CHECK(std::abs(ts.values[0] - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST_CASE("anharmonic m = 0 closed form written out") {
  const Anharmonic p{10.0, 1.0};
  const cplx alpha{0.6, 0.4};
  const auto grid = uniform_grid(3.0, 31);
  for (unsigned n = 0; n <= 3; ++n) {
    const TimeSeries ts = evolve_anharmonic_closed(p, alpha, {n, 0}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      const cplx expected = std::pow(std::conj(alpha), n) * std::polar(1.0, (n * 10.0 + n * n * 1.0) * t) *
                            std::exp(std::norm(alpha) * (std::polar(1.0, 2.0 * n * t) - 1.0));
      CHECK(std::abs(ts.values[i] - expected) < 1e-12);
    }
  }
}
