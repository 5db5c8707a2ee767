#pragma once

#include <complex>

// Real-argument special functions used by the phase integrals and the
// Zhu-Nakamura formulas. Everything here is pure and thread-safe.

namespace glancing::specialfn {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms).
double log_gamma(double x);

/// Gamma(x) for x > 0.
double gamma(double x);

/// Euler Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
double beta(double x, double y);

/// ln Gamma(iy) for y > 0 as (ln|Gamma(iy)|, arg Gamma(iy)).
///
/// The argument is the branch continued from its y -> 0+ limit of -pi/2, so
/// it is unbounded below for large y (arg ~ y ln y - y - pi/4). Small and
/// moderate y use the product series for the phase; larger y shift the
/// argument upward with the recurrence and apply Stirling's series.
std::complex<double> log_gamma_imag(double y);

/// arg Gamma(iy), continuous branch, y > 0.
double arg_gamma_imag(double y);

/// nu_N = integral_0^1 sqrt(1 - y^{2N}) dy = B(1/2N, 3/2) / (2N), N >= 1.
double nu_coefficient(int N);

/// sqrt(pi) Gamma(1/4) / (3 sqrt(2) Gamma(3/4)); the phase-integral constant
/// of the parabolic glancing model (equals sqrt(2) * nu_2).
double parabolic_phase_constant();

} // namespace glancing::specialfn
