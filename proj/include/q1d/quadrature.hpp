#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "q1d/states.hpp"

// Adaptive quadrature over finite, semi-infinite and whole-line domains,
// plus the oscillatory Fourier-integral oracle used to adjudicate the
// closed-form momentum waveform.
//
// The engine is a globally adaptive Gauss7/Kronrod15 scheme: a worst-first
// heap of panels, each panel carrying the embedded-rule error estimate with
// the usual QUADPACK scaling. Semi-infinite integrals are compactified with
// x = t/(1-t) before panelling; that handles both exponential tails and the
// integrable log singularities of the entropy integrands. All refinement is
// deterministic and the final sum is accumulated in a fixed order, so equal
// inputs give bit-equal results.

namespace q1d {

// Requested accuracy for one integral. Converged means the accumulated
// error estimate is below max(absolute, relative * |value|).
struct ToleranceSpec {
  double absolute = 1e-12;
  double relative = 1e-10;
  std::size_t max_evaluations = 1'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct ComplexQuadratureResult {
  ComplexAmplitude value{0.0, 0.0};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Thrown when an integral cannot be finished (evaluation budget exhausted,
// refinement stalled at machine width, or a non-finite integrand value).
// Carries the best estimate available at the point of failure.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best_estimate() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

namespace detail {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1] (QUADPACK dqk15).
// Gauss nodes sit at the odd Kronrod indices plus the center.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// One G7/K15 application on [a, b]. The error estimate is the QUADPACK
// rescaling of |K15 - G7| against the spread of the integrand, with the
// 50-ulp rounding floor.
template <class F>
Panel gk15_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv1[7];
  double fv2[7];
  const double fc = f(center);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Panel panel;
  panel.a = a;
  panel.b = b;
  panel.value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(eps50 * resabs, err);
  panel.error = err;
  return panel;
}

inline void require_valid(const ToleranceSpec& tol) {
  if (!(tol.absolute > 0.0) || !(tol.relative > 0.0))
    throw std::invalid_argument("ToleranceSpec: tolerances must be positive");
  if (tol.max_evaluations < 15)
    throw std::invalid_argument("ToleranceSpec: max_evaluations must allow one panel");
}

// Neumaier-compensated sum in a fixed order.
inline double stable_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail

// Globally adaptive integration of f over the panels defined by an
// ascending breakpoint list. The breakpoints seed the refinement heap, so
// callers can pre-split at known structure (oscillation half-periods,
// density zeros) and let adaptivity do the rest.
template <class F>
QuadratureResult integrate_panels(F&& f, const std::vector<double>& breakpoints,
                                  const ToleranceSpec& tol = {}) {
  detail::require_valid(tol);
  if (breakpoints.size() < 2)
    throw std::invalid_argument("integrate_panels: need at least two breakpoints");

  std::size_t evaluations = 0;
  std::vector<detail::Panel> panels;   // refinement heap, worst error on top
  std::vector<detail::Panel> settled;  // too narrow to split further
  panels.reserve(breakpoints.size() + 64);

  const auto by_error = [](const detail::Panel& lhs, const detail::Panel& rhs) {
    return lhs.error < rhs.error;
  };

  double total_value = 0.0;
  double total_error = 0.0;

  const auto assemble = [&]() {
    std::vector<detail::Panel> all;
    all.reserve(panels.size() + settled.size());
    all.insert(all.end(), panels.begin(), panels.end());
    all.insert(all.end(), settled.begin(), settled.end());
    std::sort(all.begin(), all.end(),
              [](const detail::Panel& lhs, const detail::Panel& rhs) {
                return lhs.a < rhs.a;
              });
    std::vector<double> values;
    values.reserve(all.size());
    double err = 0.0;
    for (const auto& panel : all) {
      values.push_back(panel.value);
      err += panel.error;
    }
    return QuadratureResult{detail::stable_sum(values), err, evaluations};
  };

  const auto add_panel = [&](double a, double b) {
    detail::Panel panel = detail::gk15_panel(f, a, b);
    evaluations += 15;
    if (!std::isfinite(panel.value))
      throw quadrature_error("integrand returned a non-finite value", assemble());
    total_value += panel.value;
    total_error += panel.error;
    panels.push_back(panel);
    std::push_heap(panels.begin(), panels.end(), by_error);
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("integrate_panels: breakpoints must be ascending");
    if (evaluations + 15 > tol.max_evaluations)
      throw quadrature_error("evaluation budget exhausted while seeding panels",
                             assemble());
    add_panel(breakpoints[i], breakpoints[i + 1]);
  }

  const auto converged = [&]() {
    return total_error <=
           std::max(tol.absolute, tol.relative * std::abs(total_value));
  };

  std::size_t splits = 0;
  while (!converged()) {
    if (panels.empty())
      throw quadrature_error("refinement stalled at machine-width panels", assemble());
    if (evaluations + 30 > tol.max_evaluations)
      throw quadrature_error("quadrature did not converge within max_evaluations",
                             assemble());

    std::pop_heap(panels.begin(), panels.end(), by_error);
    const detail::Panel worst = panels.back();
    panels.pop_back();

    const double width = worst.b - worst.a;
    const double scale = std::max({1.0, std::abs(worst.a), std::abs(worst.b)});
    if (width <= 16.0 * std::numeric_limits<double>::epsilon() * scale) {
      settled.push_back(worst);
      continue;
    }

    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    add_panel(worst.a, mid);
    add_panel(mid, worst.b);

    // Resync the running totals now and then; they drift under cancellation.
    if (++splits % 64 == 0) {
      const QuadratureResult snapshot = assemble();
      total_value = snapshot.value;
      total_error = snapshot.error_estimate;
    }
  }

  return assemble();
}

template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b,
                                    const ToleranceSpec& tol = {}) {
  return integrate_panels(std::forward<F>(f), std::vector<double>{a, b}, tol);
}

// Integral of f over [0, inf). Compactified with x = t/(1-t),
// dx = dt/(1-t)^2; the Kronrod nodes are strictly interior, so the t = 1
// endpoint is never evaluated. f must decay at infinity and have at most an
// integrable singularity at 0.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, const ToleranceSpec& tol = {}) {
  auto g = [&f](double t) {
    const double s = 1.0 - t;
    const double x = t / s;
    return f(x) / (s * s);
  };
  return integrate_panels(g, std::vector<double>{0.0, 1.0}, tol);
}

// Integral of f over (-inf, inf) as the sum of two half-line integrals.
template <class F>
QuadratureResult integrate_real_line(F&& f, const ToleranceSpec& tol = {}) {
  QuadratureResult pos = integrate_semi_infinite([&f](double x) { return f(x); }, tol);
  QuadratureResult neg = integrate_semi_infinite([&f](double x) { return f(-x); }, tol);
  return {pos.value + neg.value, pos.error_estimate + neg.error_estimate,
          pos.evaluations + neg.evaluations};
}

// Fourier integral (1/sqrt(2 pi)) int_0^inf e^{-ipx} g(x) dx for an
// integrand g with an exponential envelope of scale decay_scale whose
// magnitude is monotone decreasing beyond envelope_from (no zeros, past the
// envelope peak). Beyond that point |g(x)| <= |g(X)| e^{-(x-X)/(2 decay_scale)},
// so the neglected tail is bounded by |g(X)| * 2 * decay_scale.
//
// For |p| * decay_scale <= 2 the cosine/sine factors are mild and the
// compactified half-line integrals are used directly. Above the threshold
// the range [0, X] is pre-split at the half-period boundaries k pi / |p|
// and refined globally from there.
template <class G>
ComplexQuadratureResult fourier_semi_infinite(G&& g, double p, double decay_scale,
                                              double envelope_from,
                                              const ToleranceSpec& tol = {}) {
  detail::require_valid(tol);
  const double inv_root_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double abs_p = std::abs(p);

  ToleranceSpec part_tol = tol;
  part_tol.max_evaluations = std::max<std::size_t>(tol.max_evaluations / 2, 15);

  if (abs_p * decay_scale <= 2.0) {
    QuadratureResult re = integrate_semi_infinite(
        [&](double x) { return g(x) * std::cos(p * x); }, part_tol);
    QuadratureResult im = integrate_semi_infinite(
        [&](double x) { return -g(x) * std::sin(p * x); }, part_tol);
    return {ComplexAmplitude{re.value * inv_root_2pi, im.value * inv_root_2pi},
            (re.error_estimate + im.error_estimate) * inv_root_2pi,
            re.evaluations + im.evaluations};
  }

  const double h = std::numbers::pi / abs_p;

  // Walk the cutoff outward in whole half-periods until the envelope bound
  // clears the tail budget.
  const double tail_budget = 0.05 * tol.absolute;
  std::size_t cut_index =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(envelope_from / h)));
  std::size_t probe_evals = 0;
  double tail_bound = 0.0;
  for (;;) {
    tail_bound = std::abs(g(cut_index * h)) * 2.0 * decay_scale;
    ++probe_evals;
    if (tail_bound <= tail_budget) break;
    ++cut_index;
    if (probe_evals > tol.max_evaluations)
      throw quadrature_error("fourier: envelope cutoff search exhausted budget",
                             QuadratureResult{0.0, tail_bound, probe_evals});
  }

  std::vector<double> breakpoints(cut_index + 1);
  for (std::size_t k = 0; k <= cut_index; ++k)
    breakpoints[k] = static_cast<double>(k) * h;

  part_tol.absolute = 0.5 * tol.absolute;
  QuadratureResult re = integrate_panels(
      [&](double x) { return g(x) * std::cos(p * x); }, breakpoints, part_tol);
  QuadratureResult im = integrate_panels(
      [&](double x) { return -g(x) * std::sin(p * x); }, breakpoints, part_tol);

  return {ComplexAmplitude{re.value * inv_root_2pi, im.value * inv_root_2pi},
          (re.error_estimate + im.error_estimate + tail_bound) * inv_root_2pi,
          re.evaluations + im.evaluations + probe_evals};
}

// Numeric momentum waveform straight from the defining integral,
//
//   (1/sqrt(2 pi)) int_0^inf e^{-ipx} psi_n(x) dx,
//
// independent of the closed form in states.hpp. psi_n has decay scale n and
// its outermost zero lies below 2 n^2, so the envelope is monotone from
// there on. Validated for |p| <= 50.
inline ComplexQuadratureResult fourier_transform_numeric(QuantumIndex n, double p,
                                                         const ToleranceSpec& tol = {}) {
  require_bound_state(n);
  if (!(std::abs(p) <= 50.0))
    throw std::domain_error("fourier_transform_numeric: |p| <= 50 is the validated range");
  const double nd = static_cast<double>(n);
  return fourier_semi_infinite([n](double x) { return psi(n, x); }, p, nd,
                               2.0 * nd * nd + 10.0, tol);
}

}  // namespace q1d
