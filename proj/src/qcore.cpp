#include "qdyn/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdyn/errors.hpp"

namespace qdyn {
namespace {

constexpr std::size_t kMaxSeriesTerms = 1'000'000;

// Neumaier-compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

void require_positive_q(double q, const char* what) {
  if (!(q > 0.0)) {
    throw DomainError(std::string(what) + ": requires q > 0, got q = " + std::to_string(q));
  }
}

void require_within_radius(double x, double q, const char* what) {
  if (q < 1.0 && !(std::abs(x) < 1.0 / (1.0 - q))) {
    throw ConvergenceError(std::string(what) + ": |x| = " + std::to_string(std::abs(x)) +
                           " outside radius 1/(1-q) = " + std::to_string(1.0 / (1.0 - q)));
  }
}

// Same branches as q_number, in long double. Only used for the
// cancellation-prone Stirling sums.
long double q_number_ld(unsigned n, long double q) {
  if (n == 0) return 0.0L;
  if (n == 1) return 1.0L;
  const long double d = q - 1.0L;
  const long double nn = n;
  if (std::abs(d) < kQOneBranch) {
    return nn + nn * (nn - 1) / 2 * d + nn * (nn - 1) * (nn - 2) / 6 * d * d;
  }
  const long double lq = std::log1p(d);
  return std::expm1(nn * lq) / std::expm1(lq);
}

long double q_factorial_ld(unsigned n, long double q) {
  long double f = 1.0L;
  for (unsigned k = 2; k <= n; ++k) f *= q_number_ld(k, q);
  return f;
}

long double ipow_ld(long double base, unsigned e) {
  long double r = 1.0L;  // 0^0 = 1
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// Ratio u_{k+1}/u_k of u_k = [k]^m x^k/[k]! for k >= 1. Decreasing in k
// for every q > 0, which is what makes the geometric tail bound valid.
double moment_ratio(double x_abs, double level_k, double level_k1, unsigned m) {
  return x_abs / level_k1 * std::pow(level_k1 / level_k, static_cast<double>(m));
}

// Shared log-domain truncation for the (q-)Poisson families. log_weight(k)
// gives the unnormalised log weight; level(k) gives [k]_q or k.
template <typename LogWeight, typename Level>
WeightDistribution truncated_log_weights(double alpha_sq, double tol, unsigned moment,
                                         WeightKind kind, LogWeight log_weight,
                                         Level level) {
  WeightDistribution dist;
  dist.kind = kind;
  if (alpha_sq == 0.0) {
    dist.weights = {1.0};
    return dist;
  }
  std::vector<double> logw;
  logw.push_back(log_weight(0));
  double log_sum = logw[0];
  for (std::size_t k = 0;; ++k) {
    if (k + 1 >= kMaxSeriesTerms) {
      throw ConvergenceError("weight series did not reach the tail tolerance");
    }
    if (k >= 1 || moment == 0) {
      const double lk = k == 0 ? 1.0 : level(k);
      const double rho = k == 0 ? alpha_sq / level(1) : moment_ratio(alpha_sq, lk, level(k + 1), moment);
      if (rho < 1.0) {
        const double log_u = logw[k] + (k == 0 ? 0.0 : moment * std::log(lk));
        const double bound = std::exp(log_u - log_sum) * rho / (1.0 - rho);
        if (bound < tol) {
          dist.tail_bound = bound;
          break;
        }
      }
    }
    logw.push_back(log_weight(k + 1));
    log_sum = log_add_exp(log_sum, logw.back());
  }
  dist.weights.reserve(logw.size());
  for (double lw : logw) dist.weights.push_back(std::exp(lw - log_sum));
  return dist;
}

}  // namespace

double q_number(std::size_t n, double q) {
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  const double nn = static_cast<double>(n);
  const double d = q - 1.0;
  if (std::abs(d) < kQOneBranch) {
    return nn + nn * (nn - 1.0) / 2.0 * d + nn * (nn - 1.0) * (nn - 2.0) / 6.0 * d * d;
  }
  if (q > 0.0) {
    const double lq = std::log1p(d);
    return std::expm1(nn * lq) / std::expm1(lq);
  }
  if (q == 0.0) return 1.0;
  // q < 0: q - 1 <= -1, no cancellation in the denominator.
  return (std::pow(q, nn) - 1.0) / d;
}

double log_q_factorial(std::size_t n, double q) {
  require_positive_q(q, "log_q_factorial");
  double acc = 0.0;
  for (std::size_t k = 2; k <= n; ++k) acc += std::log(q_number(k, q));
  return acc;
}

double q_exponential_radius(double q) {
  require_positive_q(q, "q_exponential_radius");
  return q < 1.0 ? 1.0 / (1.0 - q) : std::numeric_limits<double>::infinity();
}

double q_moment_series(double x, double q, unsigned m, double tol) {
  require_positive_q(q, "q_moment_series");
  require_within_radius(x, q, "q_moment_series");
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;

  CompensatedSum<long double> sum;
  if (m == 0) sum.add(1.0L);
  double term = x;  // k = 1: [1]^m x / [1]! = x
  sum.add(term);
  double level_k = 1.0;
  for (std::size_t k = 1; k < kMaxSeriesTerms; ++k) {
    const double level_k1 = q_number(k + 1, q);
    const double rho = moment_ratio(std::abs(x), level_k, level_k1, m);
    const double s = static_cast<double>(sum.value());
    if (rho < 1.0 && std::abs(term) * rho / (1.0 - rho) <= tol * std::abs(s)) {
      return s;
    }
    term *= x / level_k1 * std::pow(level_k1 / level_k, static_cast<double>(m));
    sum.add(term);
    level_k = level_k1;
  }
  throw ConvergenceError("q_moment_series: no convergence");
}

double q_exponential(double x, double q, double tol) {
  return q_moment_series(x, q, 0, tol);
}

double q_stirling2(unsigned s, unsigned m, double q) {
  require_positive_q(q, "q_stirling2");
  if (s > m) return 0.0;
  const long double ql = q;
  CompensatedSum<long double> sum;
  for (unsigned k = 0; k <= s; ++k) {
    const unsigned d = s - k;
    const long double power = ipow_ld(q_number_ld(k, ql), m);  // [0]^0 = 1
    if (power == 0.0L) continue;
    const long double qpow = std::pow(ql, static_cast<long double>(d) * (d - 1) / 2);
    long double term = qpow * power / (q_factorial_ld(k, ql) * q_factorial_ld(d, ql));
    if (d % 2 == 1) term = -term;
    sum.add(term);
  }
  return static_cast<double>(sum.value());
}

double stirling2(unsigned r, unsigned m) {
  CompensatedSum<long double> sum;
  long double fact_k = 1.0L;
  for (unsigned k = 0; k <= r; ++k) {
    if (k > 0) fact_k *= k;
    long double fact_rk = 1.0L;
    for (unsigned i = 2; i <= r - k; ++i) fact_rk *= i;
    long double term = ipow_ld(static_cast<long double>(k), m) / (fact_k * fact_rk);
    if ((r - k) % 2 == 1) term = -term;
    sum.add(term);
  }
  return static_cast<double>(sum.value());
}

StirlingTable::StirlingTable(unsigned max_m, double q)
    : max_m_(max_m), q_(q), entries_(static_cast<std::size_t>(max_m + 1) * (max_m + 1)) {
  require_positive_q(q, "StirlingTable");
  for (unsigned s = 0; s <= max_m; ++s) {
    for (unsigned m = 0; m <= max_m; ++m) {
      entries_[s * (max_m + 1) + m] = s > m ? 0.0 : q_stirling2(s, m, q);
    }
  }
}

double StirlingTable::operator()(unsigned s, unsigned m) const {
  if (s > max_m_ || m > max_m_) throw IndexError("StirlingTable index out of range");
  return entries_[s * (max_m_ + 1) + m];
}

double WeightDistribution::sum() const {
  CompensatedSum<double> acc;
  for (double w : weights) acc.add(w);
  return acc.value();
}

double WeightDistribution::mean() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) acc += static_cast<double>(k) * weights[k];
  return acc;
}

double WeightDistribution::variance() const {
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double dk = static_cast<double>(k) - mu;
    acc += dk * dk * weights[k];
  }
  return acc;
}

WeightDistribution binomial_weights(unsigned j, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("binomial_weights: p must lie in [0, 1], got " + std::to_string(p));
  }
  WeightDistribution dist;
  dist.kind = WeightKind::binomial;
  dist.weights.resize(j + 1);
  if (j <= 60) {
    double c = 1.0;
    for (unsigned k = 0; k <= j; ++k) {
      dist.weights[k] = c * std::pow(p, j - k) * std::pow(1.0 - p, k);
      c = c * (j - k) / (k + 1);
    }
    return dist;
  }
  const double lp = std::log(p);
  const double l1p = std::log1p(-p);
  for (unsigned k = 0; k <= j; ++k) {
    const double lc = std::lgamma(j + 1.0) - std::lgamma(k + 1.0) - std::lgamma(j - k + 1.0);
    const double a = (j - k) == 0 ? 0.0 : (j - k) * lp;
    const double b = k == 0 ? 0.0 : k * l1p;
    dist.weights[k] = std::exp(lc + a + b);
  }
  return dist;
}

WeightDistribution q_poisson_weights(double alpha_sq, double q, double tol, unsigned moment) {
  require_positive_q(q, "q_poisson_weights");
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
    throw DomainError("q_poisson_weights: alpha_sq must be finite and >= 0");
  }
  if (!(tol > 0.0)) throw DomainError("q_poisson_weights: tol must be > 0");
  require_within_radius(alpha_sq, q, "q_poisson_weights");

  const double log_x = alpha_sq > 0.0 ? std::log(alpha_sq) : 0.0;
  std::vector<double> levels{0.0};
  auto level = [&](std::size_t k) {
    while (levels.size() <= k) levels.push_back(q_number(levels.size(), q));
    return levels[k];
  };
  // log w_{k} = log w_{k-1} + log x - log [k]_q, memoised along the way.
  std::vector<double> log_w{0.0};
  auto log_weight = [&](std::size_t k) {
    while (log_w.size() <= k) {
      const std::size_t i = log_w.size();
      log_w.push_back(log_w.back() + log_x - std::log(level(i)));
    }
    return log_w[k];
  };
  return truncated_log_weights(alpha_sq, tol, moment, WeightKind::q_poisson, log_weight, level);
}

WeightDistribution poisson_weights(double alpha_sq, double tol, unsigned moment) {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
    throw DomainError("poisson_weights: alpha_sq must be finite and >= 0");
  }
  if (!(tol > 0.0)) throw DomainError("poisson_weights: tol must be > 0");
  const double log_x = alpha_sq > 0.0 ? std::log(alpha_sq) : 0.0;
  auto log_weight = [&](std::size_t k) {
    const double kk = static_cast<double>(k);
    return (k == 0 ? 0.0 : kk * log_x) - alpha_sq - std::lgamma(kk + 1.0);
  };
  auto level = [](std::size_t k) { return static_cast<double>(k); };
  return truncated_log_weights(alpha_sq, tol, moment, WeightKind::poisson, log_weight, level);
}

}  // namespace qdyn
