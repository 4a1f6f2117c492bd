#include "qdyn/isomap.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qdyn/algebra.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/qcore.hpp"

namespace qdyn {
namespace {

constexpr double kMapCheck = 1e-12;

template <typename T>
double relative_diff(T a, T b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// e^{i c1 t} (i c2 t)^r / r!
std::complex<double> coefficient_function(double c1, double c2, unsigned r, double t) {
  double mag = 1.0;
  for (unsigned i = 1; i <= r; ++i) mag *= c2 * t / i;
  const std::complex<double> i_pow = std::pow(std::complex<double>{0.0, 1.0}, static_cast<int>(r));
  return std::polar(1.0, c1 * t) * i_pow * mag;
}

}  // namespace

IsoMap map_to_q(double omega1, double omega2, unsigned n) {
  if (!(omega2 > 0.0) || !std::isfinite(omega2)) {
    throw DomainError("isomorphism map needs omega2 > 0 (omega2 = 0 degenerates to q = 1)");
  }
  if (!(omega1 > 0.0) || !std::isfinite(omega1)) throw DomainError("isomorphism map needs omega1 > 0");
  if (n == 0) throw DomainError("isomorphism map needs n >= 1");

  const double w = omega1 / omega2;
  const double nn = n;
  IsoMap map;
  map.n = n;
  map.source = {omega1, omega2};
  map.q_of_n = (w + nn + 2.0) / (w + nn);
  map.p_n = (w + nn) / (w + nn + 2.0);
  const double energy_n = nn * omega1 + nn * nn * omega2;
  map.omega_q = energy_n / q_number(n, map.q_of_n);

  if (!(map.q_of_n > 1.0)) throw std::logic_error("isomorphism map produced q <= 1");
  if (std::abs(1.0 / map.q_of_n - map.p_n) > kMapCheck) {
    throw std::logic_error("isomorphism map: 1/q and p_n disagree");
  }
  if (relative_diff(map.omega_q * q_number(n, map.q_of_n), energy_n) > kMapCheck) {
    throw std::logic_error("isomorphism map: omega_q [n]_q != n w1 + n^2 w2");
  }
  return map;
}

double IsoResiduals::max() const {
  return std::max({inverse_q_vs_p, z_difference, coefficient_table, coefficient_function, closure});
}

std::vector<double> isomorphism_time_grid(double omega2) {
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 100.0 / omega2;
  return grid;
}

IsoResiduals isomorphism_residuals(double omega1, double omega2, unsigned n, unsigned j_max) {
  return isomorphism_residuals(omega1, omega2, n, j_max, isomorphism_time_grid(omega2));
}

IsoResiduals isomorphism_residuals(double omega1, double omega2, unsigned n, unsigned j_max,
                                   std::span<const double> times) {
  const IsoMap map = map_to_q(omega1, omega2, n);
  const ModelParams qmodel = map.qosc();
  const ModelParams amodel = map.source;
  const double nn = n;
  const double qn = q_number(n, map.q_of_n);

  IsoResiduals res;
  res.inverse_q_vs_p = std::abs(1.0 / map.q_of_n - map.p_n);
  res.z_difference = relative_diff(map.omega_q * qn * map.q_of_n, nn * (omega1 + (nn + 2.0) * omega2));

  for (unsigned j = 0; j <= j_max; ++j) {
    const auto tq = multicommutator_expansion(qmodel, n, 0, j);
    const auto ta = multicommutator_expansion(amodel, n, 0, j);
    for (std::size_t k = 0; k < tq.size(); ++k) {
      res.coefficient_table = std::max(res.coefficient_table, relative_diff(tq[k].coeff, ta[k].coeff));
    }
  }

  const double c1q = qn * map.omega_q;
  const double c2q = qn * (map.q_of_n - 1.0) * map.omega_q;
  const double c1a = nn * omega1 + nn * nn * omega2;
  const double c2a = 2.0 * nn * omega2;
  for (unsigned r = 0; r <= j_max; ++r) {
    for (double t : times) {
      res.coefficient_function =
          std::max(res.coefficient_function, relative_diff(coefficient_function(c1q, c2q, r, t),
                                                           coefficient_function(c1a, c2a, r, t)));
    }
  }

  const ClosureCoeffs cq = closure_coeffs(qmodel, n);
  const ClosureCoeffs ca = closure_coeffs(amodel, n);
  res.closure = std::max(relative_diff(cq.c_same, ca.c_same), relative_diff(cq.c_up, ca.c_up));
  return res;
}

}  // namespace qdyn
