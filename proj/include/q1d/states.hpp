#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "q1d/special_functions.hpp"

// Closed-form bound states of the half-line Coulomb problem in Coulomb
// units: an attractive -1/x potential for x > 0 with an impenetrable wall
// at x <= 0. Particle mass, coupling strength and hbar are all 1; energies,
// lengths and momenta are dimensionless throughout.

namespace q1d {

// Bound states are labelled n = 1, 2, ...
using QuantumIndex = int;

// Momentum-space amplitude value.
using ComplexAmplitude = std::complex<double>;

inline void require_bound_state(QuantumIndex n) {
  if (n < 1) throw std::domain_error("quantum index n must be >= 1");
}

// V(x) = -1/x for x > 0. The wall region x <= 0 is outside the domain.
inline double potential(double x) {
  if (x <= 0.0)
    throw std::domain_error("potential: x <= 0 lies inside the hard wall");
  return -1.0 / x;
}

// E_n = -1/(2 n^2); the spectrum of the 3D hydrogen atom.
inline double energy(QuantumIndex n) {
  require_bound_state(n);
  const double nd = static_cast<double>(n);
  return -0.5 / (nd * nd);
}

// Position eigenfunction on x >= 0:
//
//   psi_n(x) = (2 x / n^{5/2}) e^{-x/n} L_{n-1}^{(1)}(2x/n),  psi_n(0) = 0.
//
// Real, normalized on [0, inf), with n-1 interior zeros.
inline double psi(QuantumIndex n, double x) {
  require_bound_state(n);
  if (x < 0.0) throw std::domain_error("psi: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double y = 2.0 * x / nd;
  return y / (nd * std::sqrt(nd)) * std::exp(-x / nd) *
         laguerre({n - 1, 1}, y);
}

// Momentum waveform
//
//   phi_n(p) = (-1)^{n+1} sqrt(2n/pi) (1 - inp)^{n-1} / (1 + inp)^{n+1}.
//
// Both binomial factors share the modulus sqrt(1 + n^2 p^2), so the ratio is
// evaluated in polar form: modulus (1 + n^2 p^2)^{-1}, phase
// -2n arctan(np). arctan is single-valued, so no branch-cut bookkeeping and
// no error growth from repeated complex multiplication.
inline ComplexAmplitude phi(QuantumIndex n, double p) {
  require_bound_state(n);
  const double nd = static_cast<double>(n);
  const double np = nd * p;
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n+1}
  const double modulus =
      std::sqrt(2.0 * nd / std::numbers::pi) / (1.0 + np * np);
  const double phase = -2.0 * nd * std::atan(np);
  return {sign * modulus * std::cos(phase), sign * modulus * std::sin(phase)};
}

// The rival real-valued waveform, exactly the imaginary part of phi:
//
//   phi_stc_n(p) = (-1)^n sqrt(2n/pi) sin(2n arctan(np)) / (1 + n^2 p^2).
//
// It vanishes at p = 0 for every n.
inline double phi_stc(QuantumIndex n, double p) {
  require_bound_state(n);
  const double nd = static_cast<double>(n);
  const double np = nd * p;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
  return sign * std::sqrt(2.0 * nd / std::numbers::pi) *
         std::sin(2.0 * nd * std::atan(np)) / (1.0 + np * np);
}

// Momentum density |phi_n(p)|^2 = (2n/pi) / (1 + n^2 p^2)^2.
// Even, strictly decreasing in |p|, peak 2n/pi at p = 0; it narrows like
// 1/n and concentrates toward a delta spike as n grows.
inline double gamma_density(QuantumIndex n, double p) {
  require_bound_state(n);
  const double nd = static_cast<double>(n);
  const double np = nd * p;
  const double denom = 1.0 + np * np;
  return 2.0 * nd / std::numbers::pi / (denom * denom);
}

// Density of the rival waveform after its ad-hoc renormalization
// (the waveform doubled, then squared):
//
//   gamma_stc_n(p) = (8n/pi) sin^2(2n arctan(np)) / (1 + n^2 p^2)^2
//                  = 4 * phi_stc_n(p)^2.
//
// Integrates to 1 over the half line [0, inf) only; the whole-line
// integral is 2.
inline double gamma_stc_density(QuantumIndex n, double p) {
  require_bound_state(n);
  const double nd = static_cast<double>(n);
  const double np = nd * p;
  const double denom = 1.0 + np * np;
  const double s = std::sin(2.0 * nd * std::atan(np));
  return 8.0 * nd / std::numbers::pi * s * s / (denom * denom);
}

// Position density psi_n(x)^2.
inline double rho_density(QuantumIndex n, double x) {
  const double v = psi(n, x);
  return v * v;
}

}  // namespace q1d
