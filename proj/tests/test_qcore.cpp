#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qdyn/errors.hpp"
#include "qdyn/qcore.hpp"
#include "support.hpp"

using namespace qdyn;
using testing::rel_diff;

namespace {

long double geometric_q_number(unsigned n, long double q) {
  long double s = 0.0L, p = 1.0L;
  for (unsigned i = 0; i < n; ++i) {
    s += p;
    p *= q;
  }
  return s;
}

// Carlitz-type recurrence S(s, m+1) = q^{s-1} S(s-1, m) + [s] S(s, m).
double stirling_by_recurrence(unsigned s, unsigned m, double q) {
  std::vector<std::vector<long double>> t(m + 1, std::vector<long double>(m + 2, 0.0L));
  t[0][0] = 1.0L;
  for (unsigned mm = 1; mm <= m; ++mm) {
    for (unsigned ss = 1; ss <= mm; ++ss) {
      t[mm][ss] = std::pow(static_cast<long double>(q), ss - 1) * t[mm - 1][ss - 1] +
                  geometric_q_number(ss, q) * t[mm - 1][ss];
    }
  }
  return s <= m ? static_cast<double>(t[m][s]) : 0.0;
}

}  // namespace

TEST_CASE("q_number matches the geometric sum") {
  for (double q : {0.3, 0.5, 0.9, 1.0, 1.2, 2.0, 3.5}) {
    for (unsigned n = 0; n <= 40; ++n) {
      CHECK(rel_diff(q_number(n, q), static_cast<double>(geometric_q_number(n, q))) < 1e-14);
    }
  }
  CHECK(q_number(0, 2.0) == 0.0);
  CHECK(q_number(1, 0.7) == 1.0);
  CHECK(q_number(5, 0.0) == 1.0);
}

TEST_CASE("q_number is continuous across the q = 1 branch") {
  for (unsigned n : {1u, 2u, 7u, 30u}) {
    for (double d : {-2e-8, -1e-8, -5e-9, 0.0, 5e-9, 1e-8, 2e-8}) {
      const double q = 1.0 + d;
      CHECK(rel_diff(q_number(n, q), static_cast<double>(geometric_q_number(n, q))) < 1e-14);
    }
  }
}

TEST_CASE("log_q_factorial agrees with products and lgamma") {
  for (double q : {0.5, 1.2, 2.0}) {
    long double prod = 1.0L;
    for (unsigned n = 1; n <= 25; ++n) {
      prod *= geometric_q_number(n, q);
      CHECK(rel_diff(log_q_factorial(n, q), std::log(static_cast<double>(prod))) < 1e-13);
    }
  }
  for (unsigned n : {1u, 10u, 100u}) CHECK(rel_diff(log_q_factorial(n, 1.0), std::lgamma(n + 1.0)) < 1e-13);
}

TEST_CASE("q_exponential reduces to exp at q = 1") {
  for (double x : {-3.0, -0.5, 0.0, 0.1, 1.0, 4.0, 10.0}) CHECK(rel_diff(q_exponential(x, 1.0), std::exp(x)) < 1e-13);
}

TEST_CASE("q_exponential for q < 1 matches the infinite product") {
  // sum_k x^k/[k]! = 1 / prod_i (1 - (1-q) x q^i) inside the radius
  for (double q : {0.3, 0.5, 0.8}) {
    for (double frac : {-0.9, -0.2, 0.1, 0.5, 0.9}) {
      const double x = frac / (1.0 - q);
      long double prod = 1.0L;
      for (int i = 0; i < 4000; ++i) prod *= 1.0L - (1.0L - q) * x * std::pow(static_cast<long double>(q), i);
      CHECK(rel_diff(q_exponential(x, q), static_cast<double>(1.0L / prod)) < 1e-12);
    }
  }
  CHECK(std::isinf(q_exponential_radius(1.0)));
  CHECK(q_exponential_radius(0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(q_exponential(2.5, 0.5), ConvergenceError);
}

TEST_CASE("q_moment_series with m = 0 is q_exponential") {
  for (double q : {0.5, 1.0, 2.0}) CHECK(q_moment_series(0.7, q, 0) == q_exponential(0.7, q));
  // sum [k] x^k/[k]! = x exp_q(x)
  for (double q : {0.5, 1.2, 2.0}) CHECK(rel_diff(q_moment_series(1.3, q, 1), 1.3 * q_exponential(1.3, q)) < 1e-13);
}

TEST_CASE("classical Stirling numbers") {
  CHECK(stirling2(0, 0) == 1.0);
  CHECK(stirling2(2, 5) == doctest::Approx(15.0));
  CHECK(stirling2(3, 5) == doctest::Approx(25.0));
  CHECK(stirling2(4, 7) == doctest::Approx(350.0));
  CHECK(stirling2(3, 2) == doctest::Approx(0.0));
  // sum_r S(m, r) = Bell(m)
  const double bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
  for (unsigned m = 0; m < 8; ++m) {
    double s = 0.0;
    for (unsigned r = 0; r <= m; ++r) s += stirling2(r, m);
    CHECK(s == doctest::Approx(bell[m]).epsilon(1e-13));
  }
}

TEST_CASE("q-Stirling numbers satisfy their recurrence") {
  for (double q : {0.5, 1.0, 1.2, 2.0}) {
    for (unsigned m = 0; m <= 8; ++m) {
      for (unsigned s = 0; s <= m + 1; ++s) {
        const double oracle = stirling_by_recurrence(s, m, q);
        const double got = q_stirling2(s, m, q);
        CHECK(std::abs(got - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)));
      }
    }
  }
  const StirlingTable table(5, 1.2);
  CHECK(table(2, 4) == q_stirling2(2, 4, 1.2));
  for (unsigned m = 0; m <= 6; ++m) {
    for (unsigned s = 0; s <= m; ++s) CHECK(q_stirling2(s, m, 1.0) == doctest::Approx(stirling2(s, m)));
  }
}

TEST_CASE("binomial weights") {
  for (unsigned j : {0u, 1u, 6u, 40u, 200u}) {
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
      const WeightDistribution w = binomial_weights(j, p);
      CHECK(w.size() == j + 1);
      CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
      // mean of B(j, k, p) = C(j,k) p^{j-k} (1-p)^k is j (1 - p)
      CHECK(w.mean() == doctest::Approx(j * (1.0 - p)).epsilon(1e-10));
      CHECK(w.variance() == doctest::Approx(j * p * (1.0 - p)).epsilon(1e-9).scale(1.0));
    }
  }
  const WeightDistribution w = binomial_weights(4, 0.25);
  CHECK(w[1] == doctest::Approx(4 * 0.25 * 0.25 * 0.25 * 0.75));
}

TEST_CASE("Poisson weights") {
  for (double x : {0.01, 0.64, 5.0, 50.0}) {
    const WeightDistribution w = poisson_weights(x, 1e-14);
    CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(w.mean() == doctest::Approx(x).epsilon(1e-10));
    CHECK(w.variance() == doctest::Approx(x).epsilon(1e-9));
    CHECK(w.tail_bound < 1e-14);
    const double p1 = x * std::exp(-x);
    CHECK(w[1] == doctest::Approx(p1).epsilon(1e-12));
  }
}

TEST_CASE("q-Poisson weights: mean of [k]_q is |alpha|^2") {
  for (double q : {0.5, 1.0, 1.2, 2.0}) {
    for (double x : {0.1, 0.64, 1.5}) {
      const WeightDistribution w = q_poisson_weights(x, q, 1e-14);
      double mean_qk = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) mean_qk += w[k] * q_number(k, q);
      CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(mean_qk == doctest::Approx(x).epsilon(1e-12));
      CHECK(w[0] == doctest::Approx(1.0 / q_exponential(x, q)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(q_poisson_weights(3.0, 0.5, 1e-12), ConvergenceError);
}

TEST_CASE("moment-weighted truncation keeps the moment tail small") {
  const WeightDistribution plain = q_poisson_weights(0.64, 1.2, 1e-12);
  const WeightDistribution weighted = q_poisson_weights(0.64, 1.2, 1e-12, 3);
  CHECK(weighted.size() >= plain.size());
  const WeightDistribution pw = poisson_weights(4.0, 1e-12, 3);
  CHECK(pw.size() >= poisson_weights(4.0, 1e-12).size());
}
