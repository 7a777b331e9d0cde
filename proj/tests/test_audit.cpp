#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "q1d/audit.hpp"
#include "q1d/quadrature.hpp"
#include "q1d/states.hpp"

using namespace q1d;

namespace {
constexpr double kMassNa5 = 0.99676096292345559;    // (2/pi)(arctan 5 + 5/26)
constexpr double kMassN3A04 = 0.87080756808092765;  // closed form at na = 1.2
constexpr double kSqrt4OverPi = 1.1283791670955126;
}  // namespace

TEST_CASE("orthonormality_position: identity Gram matrix") {
  const ClaimReport single = orthonormality_position(1);
  CHECK(single.passed);
  CHECK(single.residual <= 1e-10);

  const ClaimReport five = orthonormality_position(5);
  CHECK(five.passed);
  CHECK(five.residual <= 1e-8);

  const QuadratureResult off =
      integrate_semi_infinite([](double x) { return psi(1, x) * psi(2, x); });
  CHECK(std::abs(off.value) <= 1e-10);

  CHECK_THROWS_AS(orthonormality_position(21), std::domain_error);
}

TEST_CASE("orthonormality_momentum: identity Gram matrix, complex inner product") {
  const ClaimReport single = orthonormality_momentum(1);
  CHECK(single.passed);
  CHECK(single.residual <= 1e-10);

  const QuadratureResult re12 = integrate_real_line(
      [](double p) { return (std::conj(phi(1, p)) * phi(2, p)).real(); });
  const QuadratureResult im12 = integrate_real_line(
      [](double p) { return (std::conj(phi(1, p)) * phi(2, p)).imag(); });
  CHECK(std::abs(re12.value) <= 1e-9);
  CHECK(std::abs(im12.value) <= 1e-9);

  const ClaimReport five = orthonormality_momentum(5);
  CHECK(five.passed);
  CHECK(five.residual <= 1e-8);
}

TEST_CASE("orthonormality: quadrature failure propagates with the pair") {
  ToleranceSpec impossible;
  impossible.absolute = 1e-30;
  impossible.relative = 1e-30;
  impossible.max_evaluations = 2000;
  bool thrown = false;
  try {
    orthonormality_position(2, impossible);
  } catch (const quadrature_error& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("pair") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("fourier_consistency: closed form is the transform") {
  const ClaimReport n1 = fourier_consistency(1, default_fourier_grid());
  CHECK(n1.passed);
  CHECK(n1.residual <= 1e-8);

  const ClaimReport n4 = fourier_consistency(4, default_fourier_grid());
  CHECK(n4.passed);
  CHECK(n4.residual <= 1e-8);

  CHECK_THROWS_AS(fourier_consistency(1, {11.0}), std::domain_error);
  CHECK_THROWS_AS(fourier_consistency(21, {1.0}), std::domain_error);
}

TEST_CASE("fourier_consistency: residual is invariant under grid reflection") {
  // The transform obeys FT(-p) = conj(FT(p)) and phi the same parity, and
  // the sine path negates evaluation by evaluation, so the residuals agree
  // exactly.
  const ClaimReport plus = fourier_consistency(3, {0.5, 1.0, 2.0});
  const ClaimReport minus = fourier_consistency(3, {-0.5, -1.0, -2.0});
  CHECK(plus.residual == minus.residual);
}

TEST_CASE("stc_fourier_contrast: the rival waveform fails the same comparison") {
  const ClaimReport contrast = stc_fourier_contrast(2, default_fourier_grid());
  CHECK(contrast.passed);  // passed means the mismatch is large
  CHECK(contrast.residual == 0.0);

  // At p = 0 the discrepancy is the whole real part, sqrt(4/pi).
  const ComplexQuadratureResult ft0 = fourier_transform_numeric(2, 0.0);
  const double gap = std::abs(ft0.value - ComplexAmplitude{phi_stc(2, 0.0), 0.0});
  CHECK(gap == Catch::Approx(kSqrt4OverPi).margin(1e-6));
}

TEST_CASE("node_count: position space") {
  const ClaimReport n1 = node_count(1, NodeSpace::position);
  CHECK(n1.passed);
  CHECK(n1.residual == 0.0);

  const ClaimReport n4 = node_count(4, NodeSpace::position);
  CHECK(n4.passed);

  const ClaimReport n15 = node_count(15, NodeSpace::position);
  CHECK(n15.passed);

  CHECK_THROWS_AS(node_count(16, NodeSpace::position), std::domain_error);
}

TEST_CASE("node_count: momentum-space rival waveform") {
  const ClaimReport n1 = node_count(1, NodeSpace::momentum_stc);
  CHECK(n1.passed);

  const ClaimReport n4 = node_count(4, NodeSpace::momentum_stc);
  CHECK(n4.passed);

  // zeros at p = tan(k pi / 8) / 4 for n = 4
  const double z1 = std::tan(std::numbers::pi / 8.0) / 4.0;
  const double z2 = std::tan(std::numbers::pi / 4.0) / 4.0;
  const double z3 = std::tan(3.0 * std::numbers::pi / 8.0) / 4.0;
  CHECK(z1 == Catch::Approx(0.10355339059327376).epsilon(1e-14));
  CHECK(z2 == Catch::Approx(0.25).epsilon(1e-14));
  CHECK(z3 == Catch::Approx(0.60355339059327373).epsilon(1e-14));
  for (double z : {z1, z2, z3}) CHECK(std::abs(phi_stc(4, z)) <= 1e-12);
}

TEST_CASE("stc_normalization: one on the half line, two on the whole line") {
  const ClaimReport n1 = stc_normalization(1);
  CHECK(n1.passed);
  CHECK(n1.residual <= 1e-9);
  CHECK(n1.details.find("whole-line") != std::string::npos);

  const QuadratureResult whole =
      integrate_real_line([](double p) { return gamma_stc_density(1, p); });
  CHECK(whole.value == Catch::Approx(2.0).margin(1e-9));

  const ClaimReport n7 = stc_normalization(7);
  CHECK(n7.passed);
  CHECK(n7.residual <= 1e-9);
}

TEST_CASE("delta_limit: closed-form mass and monotone concentration") {
  CHECK(delta_limit(1, 5.0) == Catch::Approx(kMassNa5).epsilon(1e-14));
  CHECK(delta_limit(5, 1.0) == Catch::Approx(kMassNa5).epsilon(1e-14));

  // scale invariance: depends on (n, a) only through na
  CHECK(delta_limit(2, 1.0) == delta_limit(4, 0.5));

  const double a = 0.5;
  CHECK(delta_limit(1, a) < delta_limit(4, a));
  CHECK(delta_limit(4, a) < delta_limit(10, a));
  CHECK(delta_limit(10, a) < delta_limit(100, a));

  CHECK(delta_limit(1, 1e12) == Catch::Approx(1.0).margin(1e-10));
  CHECK_THROWS_AS(delta_limit(1, 0.0), std::domain_error);
}

TEST_CASE("delta_concentration: quadrature agrees with the antiderivative") {
  const QuadratureResult quad =
      integrate_interval([](double p) { return gamma_density(3, p); }, -0.4, 0.4);
  CHECK(quad.value == Catch::Approx(kMassN3A04).margin(1e-11));

  const ClaimReport claim = delta_concentration(2);
  CHECK(claim.passed);
  CHECK(claim.residual <= 1e-10);
}

TEST_CASE("claim reports keep the residual/tolerance invariant") {
  for (const ClaimReport& claim :
       {orthonormality_position(2), node_count(3, NodeSpace::position),
        stc_normalization(2), delta_concentration(1)}) {
    CHECK(claim.passed == (claim.residual <= claim.tolerance));
    CHECK(claim.tolerance > 0.0);
  }
}

TEST_CASE("run_claim_suite: everything passes for n = 1..3") {
  const ClaimSuiteResult suite = run_claim_suite({1, 2, 3});
  CHECK_FALSE(suite.nonconvergence);
  CHECK(suite.all_passed());
  // orthonormality twice, then five claims per n
  CHECK(suite.claims.size() == 2 + 5 * 3);
}

TEST_CASE("run_stc_audit: the rival's profile for n = 1..2") {
  const ClaimSuiteResult suite = run_stc_audit({1, 2});
  CHECK_FALSE(suite.nonconvergence);
  CHECK(suite.all_passed());
  CHECK(suite.claims.size() == 3 * 2);
}

TEST_CASE("run_claim_suite: impossible tolerances are flagged, not thrown") {
  ToleranceSpec impossible;
  impossible.absolute = 1e-30;
  impossible.relative = 1e-30;
  impossible.max_evaluations = 2000;
  const ClaimSuiteResult suite = run_claim_suite({1}, impossible);
  CHECK(suite.nonconvergence);
  CHECK_FALSE(suite.all_passed());
}
