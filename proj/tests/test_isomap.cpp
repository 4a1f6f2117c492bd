#include <doctest.h>

#include "qdyn/errors.hpp"
#include "qdyn/isomap.hpp"
#include "qdyn/qcore.hpp"

using namespace qdyn;

TEST_CASE("map values") {
  const IsoMap m = map_to_q(10.0, 1.0, 1);
  CHECK(m.q_of_n == doctest::Approx(13.0 / 11.0));
  CHECK(m.omega_q == doctest::Approx(11.0));
  CHECK(m.p_n == doctest::Approx(11.0 / 13.0));
  const IsoMap big = map_to_q(10.0, 1.0, 100);
  CHECK(big.q_of_n > 1.0);
  CHECK(big.q_of_n < 1.02);
}

TEST_CASE("map is decreasing in n and always above one") {
  for (double ratio : {0.01, 1.0, 5.0, 100.0, 1e4}) {
    double prev = 1e300;
    for (unsigned n = 1; n <= 50; ++n) {
      const IsoMap m = map_to_q(ratio, 1.0, n);
      CHECK(m.q_of_n > 1.0);
      CHECK(m.q_of_n < prev);
      prev = m.q_of_n;
    }
  }
}

TEST_CASE("mapped q-oscillator reproduces the anharmonic energy gap") {
  // omega_q [n]_q q^k should equal the anharmonic frequency of the k-th phase
  // only through the binomial scale: Z = omega_q [n] q = n(w1 + (n+2) w2)
  for (unsigned n = 1; n <= 4; ++n) {
    const IsoMap m = map_to_q(5.0, 2.0, n);
    CHECK(m.omega_q * q_number(n, m.q_of_n) * m.q_of_n == doctest::Approx(n * (5.0 + (n + 2) * 2.0)));
    CHECK(m.omega_q * q_number(n, m.q_of_n) == doctest::Approx(n * 5.0 + n * n * 2.0));
  }
}

TEST_CASE("isomorphism residuals") {
  for (double ratio : {1.0, 5.0, 10.0, 100.0}) {
    for (unsigned n = 1; n <= 4; ++n) CHECK(isomorphism_residuals(ratio, 1.0, n, 6).max() < 1e-12);
  }
}

TEST_CASE("map domain") {
  CHECK_THROWS_AS(map_to_q(10.0, 0.0, 1), DomainError);
  CHECK_THROWS_AS(map_to_q(10.0, -1.0, 1), DomainError);
  CHECK_THROWS_AS(map_to_q(0.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(map_to_q(10.0, 1.0, 0), DomainError);
}
