#pragma once

#include <complex>
#include <functional>

#include "glancing/models.hpp"

// Zhu-Nakamura final recommended formulas for the Landau-Zener-type case:
// the double-crossing branch (b^2 >= 0), the tunneling branch (b^2 <= 0),
// the parameter fit from adiabatic geometry, and the approximate phase
// integral. Inputs follow the reduced-parameter convention of models.hpp.

namespace glancing::znt {

using ComplexValue = std::complex<double>;

struct ZntInputs {
    double a_sq;
    double sigma;
    double delta;
};

/// p = exp[-(pi / 4a) (2 / (b^2 + sqrt(b^4 + 0.4 a^2 + 0.7)))^{1/2}].
double single_passage_probability(double a_sq, double b_sq);

/// The same p for the parabolic glancing model in terms of alpha.
double single_passage_parabolic(double alpha);

/// delta_psi = (1 + 5 sqrt(a) / (sqrt(a) + 0.8) 10^{-sigma}) delta.
double delta_psi(double a_sq, double sigma, double delta);

/// phi_s = -y + y ln y - arg Gamma(i y) - pi/4 with y = delta_eff / pi.
double stokes_phase(double delta_eff);

/// 4 p (1 - p) sin^2(sigma + phi_s(delta_psi)).
double double_crossing_probability(double a_sq, double b_sq, double sigma, double delta);

/// B(x) = 2 pi x^{2x} / (x Gamma(x)^2); not the Euler Beta function.
double tunneling_B(double x);

/// Every intermediate of the tunneling branch, for inspection and tests.
struct TunnelingTerms {
    double g1;
    double g2;
    double B;
    double p;
    ComplexValue stokes_constant;
    double probability;
};

/// Throws BranchFailure when the Im U1 radicand is negative and DomainError
/// when p falls outside (0, 1).
TunnelingTerms tunneling_terms(double a_sq, double sigma, double delta);

/// 4 p (1 - p) sin^2(arg U1) of the tunneling branch.
double tunneling_probability(double a_sq, double sigma, double delta);

/// Lower and upper adiabatic potentials E1 < E2 on [t_min, t_max].
struct AdiabaticCurves {
    std::function<double(double)> lower;
    std::function<double(double)> upper;
    double t_min;
    double t_max;
};

AdiabaticCurves adiabatic_curves(const DiabaticModel& model, double t_min, double t_max);

struct FitGeometry {
    double t_b;  ///< minimum of the upper curve
    double t_t;  ///< maximum of the lower curve
    double t_0;  ///< minimum of the gap
    double v0_fit;
    double d_sq;
};

struct FitResult {
    FitGeometry geometry;
    double a_sq;
    double b_sq;
};

/// Locates t_b, t_t, t_0 by a grid scan refined with Brent's method, then
/// evaluates V0, d^2 and (a^2, b^2) with |t_t^2 - t_b^2| in the denominators.
/// Throws DegenerateGeometry when |d^2 - 1| or |t_t^2 - t_b^2| is below 1e-8
/// and BracketingError when an extremum sits on the interval boundary.
FitResult fit_parameters(const AdiabaticCurves& curves);

/// sigma + i delta from the fitted geometry:
/// int_0^{t_b} E2 - int_0^{t_t} E1 + sqrt(b^2/a^2) + Delta, where the last term
/// of Delta is integrated along the segment from 0 to i.
ComplexValue znt_phase_estimate(const FitResult& fit, const AdiabaticCurves& curves);

/// Wiring for the glancing family: a^2 = 1/(4 alpha^3) and (sigma, delta)
/// from the exact phase integral at the first zero point.
ZntInputs superparabolic_inputs(int N, double alpha);

double superparabolic_double_crossing(int N, double alpha);
double superparabolic_tunneling(int N, double alpha);

} // namespace glancing::znt
