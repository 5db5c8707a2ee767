#pragma once

#include <complex>
#include <vector>

#include "glancing/models.hpp"

// Dykhne-Davis-Pechukas approximation for the superparabolic glancing family.

namespace glancing::ddp {

using ComplexValue = std::complex<double>;

/// Upper-half-plane zero of eps(t)^2 + alpha^2.
struct ZeroPoint {
    int k;
    ComplexValue value;
};

/// D(t_c) = sigma + i delta.
struct PhaseIntegral {
    double sigma;
    double delta;
};

/// alpha^{1/N} e^{i pi (2k - 1) / 2N}, k = 1..N.
std::vector<ZeroPoint> zero_points(int N, double alpha);

/// eta = 2 nu_N alpha^{(N+1)/N}, the common modulus of every D(t_c^k).
double phase_modulus(int N, double alpha);

/// D(t_c^k) = eta e^{i pi (2k - 1) / 2N}.
ComplexValue phase_integral(int N, double alpha, int k);

/// Real and imaginary parts of D(t_c^1).
PhaseIntegral dominant_phase(int N, double alpha);

/// Gamma_k = 4i lim_{t -> t_c} (t - t_c) theta'(t), with theta' the mixing-angle
/// rate that couples the adiabatic amplitudes in the propagator (theta' equals
/// minus the + branch of nonadiabatic_coupling). Evaluated by Richardson
/// extrapolation along the inward radial ray; superparabolic zeros give
/// (-1)^k. Throws NonSimpleZero when the extrapolation table does not settle.
ComplexValue residue_prefactor(const DiabaticModel& model, ComplexValue t_c);

/// Coherent sum over the N/2 zero-point pairs:
/// 4 |sum_k (-1)^k e^{-eta sin phi_k} sin(eta cos phi_k)|^2, phi_k = pi (2k-1)/2N.
double ddp_probability(int N, double alpha);

/// |sum_k Gamma_k e^{i D(t_c^k)}|^2 over all N zeros, with Gamma_k from
/// residue_prefactor. Slow; used to cross-check ddp_probability.
double ddp_probability_from_residues(int N, double alpha);

/// 4 e^{-2 c alpha^{3/2}} sin^2(c alpha^{3/2}), the N = 2 closed form.
double ddp_parabolic_closed_form(double alpha);

/// e^{-2 eta sin(pi / 2N)}: the dominant zero alone.
double ddp_single_zero(double eta, int N);

} // namespace glancing::ddp
