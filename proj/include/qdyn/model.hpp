#pragma once

#include <cstddef>
#include <string>
#include <variant>

namespace qdyn {

// hbar = 1 everywhere. The q-oscillator is evolved in tau = omega_q * t,
// the anharmonic oscillator in raw t.

/// Arik-Coon oscillator H = omega_q a_q^dag a_q with a a^dag - q a^dag a = 1.
struct QOsc {
  double q = 1.0;
  double omega_q = 1.0;
};

/// Second-order anharmonic oscillator H = omega1 N + omega2 N^2.
struct Anharmonic {
  double omega1 = 1.0;
  double omega2 = 0.0;
};

using ModelParams = std::variant<QOsc, Anharmonic>;

/// Index (n, m) of the relevant operator Lambda^{n,m} = (a^dag)^n N^m.
struct LambdaIndex {
  unsigned n = 0;
  unsigned m = 0;

  friend bool operator==(const LambdaIndex&, const LambdaIndex&) = default;
};

/// Throws DomainError unless q > 0, omega_q > 0 (QOsc) or
/// omega1 > 0, omega2 >= 0 (Anharmonic).
void validate(const ModelParams& params);

/// Deformation parameter: q for QOsc, 1 for Anharmonic.
double deformation(const ModelParams& params) noexcept;

/// Eigenvalue of the number-like operator a^dag a on |n>: [n]_q or n.
double level(const ModelParams& params, std::size_t n);

/// Energy E(n) of level n.
double energy(const ModelParams& params, std::size_t n);

/// Frequency unit converting the model's native time to raw time
/// (omega_q for QOsc, 1 for Anharmonic).
double time_unit(const ModelParams& params) noexcept;

std::string model_name(const ModelParams& params);

}  // namespace qdyn
