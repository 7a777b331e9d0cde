#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "q1d/infotheory.hpp"
#include "q1d/quadrature.hpp"
#include "q1d/states.hpp"

using namespace q1d;

namespace {
constexpr double kPhi105Re = -0.00092923284115979923;
constexpr double kPhi105Im = -0.00039281494122925496;
constexpr double kPhi102Re = -0.0034040411072162028;
constexpr double kPhi102Im = -0.0052917898478906928;
}  // namespace

TEST_CASE("interval rule: polynomials and a pinned standard integral") {
  const QuadratureResult cubic = integrate_interval([](double x) { return x * x * x; }, 0.0, 1.0);
  CHECK(cubic.value == Catch::Approx(0.25).margin(1e-15));
  CHECK(cubic.error_estimate >= 0.0);
  CHECK(cubic.evaluations >= 15);

  const QuadratureResult poly13 =
      integrate_interval([](double x) { return std::pow(x, 13); }, 0.0, 2.0);
  CHECK(poly13.value == Catch::Approx(std::pow(2.0, 14) / 14.0).epsilon(1e-13));
}

TEST_CASE("semi-infinite: exponential and density integrals") {
  const QuadratureResult expo = integrate_semi_infinite([](double x) { return std::exp(-x); });
  CHECK(expo.value == Catch::Approx(1.0).margin(1e-12));

  const QuadratureResult norm =
      integrate_semi_infinite([](double x) { return rho_density(1, x); });
  CHECK(norm.value == Catch::Approx(1.0).margin(1e-10));

  // The ground-state entropy integrand integrates to minus twice Euler's
  // constant when written as rho ln rho.
  const QuadratureResult ent = integrate_semi_infinite([](double x) {
    return -entropy_integrand(rho_density(1, x));
  });
  CHECK(ent.value == Catch::Approx(-2.0 * kEulerGamma).margin(1e-9));
}

TEST_CASE("real line: normalizations and (1+u^2)^{-2} -> pi/2") {
  CHECK(integrate_real_line([](double p) { return gamma_density(1, p); }).value ==
        Catch::Approx(1.0).margin(1e-10));
  CHECK(integrate_real_line([](double p) { return gamma_density(5, p); }).value ==
        Catch::Approx(1.0).margin(1e-10));
  const QuadratureResult lorentz =
      integrate_real_line([](double u) { return 1.0 / ((1.0 + u * u) * (1.0 + u * u)); });
  CHECK(lorentz.value == Catch::Approx(std::numbers::pi / 2.0).margin(1e-12));
}

TEST_CASE("real line equals the sum of its half-line parts") {
  auto f = [](double u) { return std::exp(-u * u) * (1.0 + u); };
  const QuadratureResult whole = integrate_real_line(f);
  const QuadratureResult pos = integrate_semi_infinite([&](double u) { return f(u); });
  const QuadratureResult neg = integrate_semi_infinite([&](double u) { return f(-u); });
  CHECK(std::abs(whole.value - (pos.value + neg.value)) <= 1e-12);
  CHECK(whole.value == Catch::Approx(std::sqrt(std::numbers::pi)).margin(1e-12));
}

TEST_CASE("tail soundness: doubling the truncation stays inside the estimate") {
  auto decay = [](double x) { return std::exp(-x); };
  const QuadratureResult full = integrate_semi_infinite(decay);
  const double x50 = integrate_interval(decay, 0.0, 50.0).value;
  const double x100 = integrate_interval(decay, 0.0, 100.0).value;
  CHECK(std::abs(x100 - x50) < full.error_estimate);

  auto lorentz = [](double p) { return gamma_density(1, p); };
  const QuadratureResult lfull = integrate_semi_infinite(lorentz);
  const double p1 = integrate_interval(lorentz, 0.0, 2e5).value;
  const double p2 = integrate_interval(lorentz, 0.0, 4e5).value;
  CHECK(std::abs(p2 - p1) < lfull.error_estimate);
}

TEST_CASE("fourier oracle: direct branch at and near p = 0") {
  const ComplexQuadratureResult at0 = fourier_transform_numeric(1, 0.0);
  CHECK(at0.value.real() ==
        Catch::Approx(std::sqrt(2.0 / std::numbers::pi)).margin(1e-10));
  CHECK(std::abs(at0.value.imag()) <= 1e-12);

  const ComplexQuadratureResult at1 = fourier_transform_numeric(1, 1.0);
  CHECK(std::abs(at1.value - phi(1, 1.0)) <= 1e-8);

  const ComplexQuadratureResult high_n = fourier_transform_numeric(10, 0.2);
  CHECK(std::abs(high_n.value - phi(10, 0.2)) <= 1e-8);

  const ComplexQuadratureResult mid = fourier_transform_numeric(4, 0.3);
  CHECK(std::abs(mid.value - phi(4, 0.3)) <= 1e-8);
}

TEST_CASE("fourier oracle: oscillatory branch against pinned closed forms") {
  const ComplexQuadratureResult f105 = fourier_transform_numeric(10, 5.0);
  CHECK(f105.value.real() == Catch::Approx(kPhi105Re).margin(1e-9));
  CHECK(f105.value.imag() == Catch::Approx(kPhi105Im).margin(1e-9));

  const ComplexQuadratureResult f102 = fourier_transform_numeric(10, 2.0);
  CHECK(f102.value.real() == Catch::Approx(kPhi102Re).margin(1e-9));
  CHECK(f102.value.imag() == Catch::Approx(kPhi102Im).margin(1e-9));

  // negative p is the conjugate point
  const ComplexQuadratureResult fneg = fourier_transform_numeric(10, -5.0);
  CHECK(std::abs(fneg.value - std::conj(f105.value)) <= 1e-9);
}

TEST_CASE("fourier oracle: linearity in the integrand") {
  auto combined = [](double x) { return psi(1, x) + psi(2, x); };
  const double p = 0.7;
  const ComplexQuadratureResult sum_transform =
      fourier_semi_infinite(combined, p, 2.0, 18.0);
  const ComplexAmplitude separate =
      fourier_transform_numeric(1, p).value + fourier_transform_numeric(2, p).value;
  CHECK(std::abs(sum_transform.value - separate) <= 1e-9);
}

TEST_CASE("fourier oracle: validated range guard") {
  CHECK_THROWS_AS(fourier_transform_numeric(1, 51.0), std::domain_error);
  CHECK_THROWS_AS(fourier_transform_numeric(0, 1.0), std::domain_error);
}

TEST_CASE("non-convergence carries the best estimate") {
  ToleranceSpec tight;
  tight.absolute = 1e-30;
  tight.relative = 1e-30;
  tight.max_evaluations = 4000;
  bool thrown = false;
  try {
    integrate_real_line([](double u) { return 1.0 / (1.0 + u * u); }, tight);
  } catch (const quadrature_error& e) {
    thrown = true;
    // aborts inside the first half-line pass, so the best estimate is pi/2
    CHECK(e.best_estimate().value ==
          Catch::Approx(std::numbers::pi / 2.0).margin(1e-6));
    CHECK(e.best_estimate().evaluations <= 4000);
  }
  CHECK(thrown);
}

TEST_CASE("NaN from the integrand is propagated as failure") {
  CHECK_THROWS_AS(integrate_semi_infinite([](double x) {
                    return x > 5.0 ? std::numeric_limits<double>::quiet_NaN()
                                   : std::exp(-x);
                  }),
                  quadrature_error);
}

TEST_CASE("invalid tolerances are rejected") {
  ToleranceSpec bad;
  bad.absolute = 0.0;
  CHECK_THROWS_AS(integrate_interval([](double x) { return x; }, 0.0, 1.0, bad),
                  std::invalid_argument);
}

TEST_CASE("identical inputs give bit-identical results") {
  auto f = [](double x) { return entropy_integrand(rho_density(3, x)); };
  const QuadratureResult a = integrate_semi_infinite(f);
  const QuadratureResult b = integrate_semi_infinite(f);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}
