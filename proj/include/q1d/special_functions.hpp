#pragma once

#include <cmath>
#include <stdexcept>

namespace q1d {

// Degree and order of a generalized Laguerre polynomial L_m^{(beta)}.
// The bound states of the half-line Coulomb problem only need beta = 1,
// but nothing here depends on that.
struct LaguerreParams {
  int degree = 0;  // m >= 0
  int order = 1;   // beta >= 0
};

// L_m^{(beta)}(x) by the forward three-term recurrence in the degree,
//
//   (k+1) L_{k+1}^{(b)} = (2k + 1 + b - x) L_k^{(b)} - (k + b) L_{k-1}^{(b)},
//
// starting from L_0 = 1, L_1 = 1 + b - x. Forward recurrence is stable at
// double precision for the degrees exercised here; degrees up to 50 are
// covered by the test suite, larger ones are unvalidated.
inline double laguerre(const LaguerreParams& params, double x) {
  if (params.degree < 0 || params.order < 0)
    throw std::domain_error("laguerre: degree and order must be non-negative");
  const double beta = static_cast<double>(params.order);
  double prev = 1.0;  // L_0
  if (params.degree == 0) return prev;
  double cur = 1.0 + beta - x;  // L_1
  for (int k = 1; k < params.degree; ++k) {
    const double next =
        ((2.0 * k + 1.0 + beta - x) * cur - (k + beta) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {

// Compensated double-double arithmetic for the sum oracle. The alternating
// finite sum cancels by up to nine decades over the tested (m, x) range, so
// plain doubles (and even long double) would drown the comparison in the
// oracle's own rounding.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  return two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DoubleDouble dd_mul_d(DoubleDouble a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  return two_sum(p.hi, std::fma(a.lo, b, p.lo));
}

inline DoubleDouble dd_div_d(DoubleDouble a, double b) {
  const double q0 = a.hi / b;
  const double q1 = (std::fma(-q0, b, a.hi) + a.lo) / b;
  return two_sum(q0, q1);
}

}  // namespace detail

// The same polynomial by the explicit finite sum
//
//   L_m^{(b)}(x) = sum_{k=0}^{m} (-1)^k C(m+b, m-k) x^k / k!,
//
// kept deliberately independent of the recurrence so the two can check each
// other. Binomials are built exactly (integer intermediates only); the
// power/factorial chain and the accumulation run in double-double, leaving
// the result correctly rounded for the admitted degrees. The naive
// factorial growth caps the degree at 20.
inline double laguerre_sum_oracle(const LaguerreParams& params, double x) {
  if (params.degree < 0 || params.order < 0)
    throw std::domain_error("laguerre_sum_oracle: degree and order must be non-negative");
  if (params.degree > 20)
    throw std::domain_error("laguerre_sum_oracle: degree > 20 overflows the naive sum");
  const int m = params.degree;
  const int beta = params.order;
  detail::DoubleDouble sum{0.0, 0.0};
  detail::DoubleDouble x_pow{1.0, 0.0};  // x^k / k!
  double sign = 1.0;
  for (int k = 0; k <= m; ++k) {
    // C(m + beta, m - k): every intermediate below is an exact integer
    double binom = 1.0;
    for (int j = 1; j <= m - k; ++j) {
      binom *= static_cast<double>(beta + k + j);
      binom /= static_cast<double>(j);
    }
    sum = detail::dd_add(sum, detail::dd_mul_d(x_pow, sign * binom));
    x_pow = detail::dd_div_d(detail::dd_mul_d(x_pow, x), k + 1.0);
    sign = -sign;
  }
  return sum.hi + sum.lo;
}

}  // namespace q1d
