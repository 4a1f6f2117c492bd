#pragma once

// q-arithmetic and combinatorics: q-numbers, log q-factorials, the
// q-exponential, q-Stirling numbers of the second kind and the
// binomial / Poisson / q-Poisson weight families.
//
// Everything factorial-like is handled in log space or by term-ratio
// recursion: [k]_q! grows like q^{k^2/2} and overflows a double near
// k ~ 40 for q = 2.

#include <cstddef>
#include <vector>

namespace qdyn {

inline constexpr double kDefaultTol = 1e-12;

/// Below this distance from 1 the q-number switches to its Taylor branch.
inline constexpr double kQOneBranch = 1e-8;

/// [n]_q = (q^n - 1)/(q - 1). Any real q; exact 0 and 1 for n = 0, 1.
double q_number(std::size_t n, double q);

/// ln([n]_q!) accumulated as a sum of logs. Requires q > 0.
double log_q_factorial(std::size_t n, double q);

/// exp_q(x) = sum_k x^k / [k]_q!. Requires q > 0 and, for q < 1,
/// |x| < 1/(1 - q). Truncated once the geometric tail bound falls below
/// tol relative to the partial sum.
double q_exponential(double x, double q, double tol = 1e-14);

/// sum_k [k]_q^m x^k / [k]_q! with the same truncation rule as
/// q_exponential; m = 0 reproduces q_exponential bit for bit.
double q_moment_series(double x, double q, unsigned m, double tol = 1e-14);

/// Radius of convergence of exp_q: 1/(1-q) for q < 1, +inf otherwise.
double q_exponential_radius(double q);

/// q-Stirling number of the second kind
///   S_q^{s,m} = sum_k (-1)^{s-k} q^{((s-k)^2-(s-k))/2} [k]^m / ([k]! [s-k]!)
/// with 0^0 = 1, and exactly 0 for s > m. The alternating sum runs in long double with
/// compensated summation.
double q_stirling2(unsigned s, unsigned m, double q);

/// Classical Stirling number of the second kind via the explicit sum.
double stirling2(unsigned r, unsigned m);

/// Table of S_q^{s,m} for 0 <= s, m <= max_m.
class StirlingTable {
 public:
  StirlingTable(unsigned max_m, double q);

  double operator()(unsigned s, unsigned m) const;
  unsigned max_m() const noexcept { return max_m_; }
  double q() const noexcept { return q_; }

 private:
  unsigned max_m_;
  double q_;
  std::vector<double> entries_;
};

enum class WeightKind { binomial, poisson, q_poisson };

struct WeightDistribution {
  std::vector<double> weights;
  /// Certified bound on the discarded mass (0 for finite support).
  double tail_bound = 0.0;
  WeightKind kind = WeightKind::binomial;

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](std::size_t k) const { return weights[k]; }
  double sum() const;
  double mean() const;
  double variance() const;
};

/// B(j,k,p) = C(j,k) p^{j-k} (1-p)^k for k = 0..j. Note that p sits on the
/// (j - k) power, so the mean of k is j (1 - p).
WeightDistribution binomial_weights(unsigned j, double p);

/// q-Poisson weights P_q(alpha, k) = |alpha|^{2k} / ([k]_q! exp_q(|alpha|^2)).
///
/// Built by the log-domain ratio recursion and normalised by their partial
/// sum. Truncation stops once the ratio-form bound on
/// sum_{k>K} [k]_q^moment w_k drops below tol; because [k]_q >= 1 for
/// k >= 1 the same number bounds the discarded mass and is recorded as
/// tail_bound.
WeightDistribution q_poisson_weights(double alpha_sq, double q,
                                     double tol = kDefaultTol,
                                     unsigned moment = 0);

/// Classical Poisson pmf of mean alpha_sq, truncated like q_poisson_weights.
WeightDistribution poisson_weights(double alpha_sq, double tol = kDefaultTol,
                                   unsigned moment = 0);

}  // namespace qdyn
