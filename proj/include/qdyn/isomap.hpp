#pragma once

// Parameter map making the q-oscillator and the anharmonic oscillator
// dynamically isomorphous at a fixed supra-index n:
//
//   q(n)    = (w1/w2 + n + 2) / (w1/w2 + n)
//   omega_q = (n w1 + n^2 w2) / [n]_q
//
// The map depends on n; it is not a single global identification.

#include <span>
#include <vector>

#include "qdyn/model.hpp"

namespace qdyn {

struct IsoMap {
  unsigned n = 1;
  double q_of_n = 1.0;
  double omega_q = 0.0;
  double p_n = 1.0;
  Anharmonic source;

  QOsc qosc() const { return {q_of_n, omega_q}; }
};

/// Throws DomainError for omega2 <= 0 (q would collapse to 1), omega1 <= 0
/// or n = 0. Validates q > 1, 1/q = p_n and omega_q [n]_q = n w1 + n^2 w2
/// to 1e-12 before returning.
IsoMap map_to_q(double omega1, double omega2, unsigned n);

struct IsoResiduals {
  double inverse_q_vs_p = 0.0;       // |1/q - p_n|
  double z_difference = 0.0;         // |Z_[n]q - Z_n| / Z_n
  double coefficient_table = 0.0;    // max relative diff of Z^j B(j,k,.) tables
  double coefficient_function = 0.0; // max relative diff of e^{ic1 t}(ic2 t)^r/r!
  double closure = 0.0;              // max relative diff of closure pairs

  double max() const;
};

/// Default time grid for the coefficient-function comparison: 101 points on
/// [0, 1/omega2].
std::vector<double> isomorphism_time_grid(double omega2);

/// Compares the two models' algebraic data under the map for depths
/// j <= j_max and orders r <= j_max on `times`.
IsoResiduals isomorphism_residuals(double omega1, double omega2, unsigned n, unsigned j_max,
                                   std::span<const double> times);

IsoResiduals isomorphism_residuals(double omega1, double omega2, unsigned n, unsigned j_max);

}  // namespace qdyn
