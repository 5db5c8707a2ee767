#pragma once

#include <functional>
#include <vector>

#include "glancing/models.hpp"

namespace glancing {

struct PropagatorSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Required |eps(T)| / V at the endpoints of the first span.
    double asymptotic_ratio = 100.0;
    /// Successive spans must agree on P to this absolute tolerance.
    double convergence_tol = 1e-6;
    /// Number of span refinements allowed after the first span.
    int max_span_doublings = 8;
    /// Each refinement multiplies the endpoint ratio by this factor. For the
    /// parabolic and N = 2 models a factor of 4 doubles T.
    double ratio_growth = 4.0;
    /// Lower bound on the half-span T.
    double min_half_span = 2.0;
};

struct PropagationResult {
    double probability = 0.0;
    double final_norm_drift = 0.0;
    /// Half-span T of the run that produced `probability`.
    double span_used = 0.0;
    int doublings_used = 0;
    bool converged = false;
};

/// Which formulation integrates the Schroedinger equation.
enum class Basis {
    /// Adiabatic amplitudes with the dynamical phase factored out; coupled
    /// only through the mixing-angle rate. The production route.
    AdiabaticInteraction,
    /// Plain diabatic amplitudes; kept as an independent cross-check.
    Diabatic,
};

/// Real diabatic level eps(t), its slope, and a constant coupling V > 0.
struct TwoLevelDrive {
    std::function<double(double)> epsilon;
    std::function<double(double)> slope;
    double coupling = 1.0;
};

TwoLevelDrive make_drive(const DiabaticModel& model);

/// Half-span of the first run: max(min_half_span, T(asymptotic_ratio)).
double initial_half_span(const DiabaticModel& model, const PropagatorSettings& settings);

/// Transition probability P = |c1(+inf)|^2 starting from state 2 at -inf.
///
/// Integrates on [-T, T], refining T until two successive spans agree to
/// convergence_tol. The state at -T is the adiabatic state connected to
/// diabatic state 2, and the amplitude at +T is extended to +inf, both with
/// the first-order superadiabatic tail, so the residual span error falls
/// off like (V / eps(T))^2 rather than V / eps(T).
///
/// Throws NonConvergence when the refinement budget is exhausted and
/// ToleranceFailure when the step controller stalls.
PropagationResult propagate(const DiabaticModel& model, const PropagatorSettings& settings = {},
                            Basis basis = Basis::AdiabaticInteraction);

/// One run on the fixed span [-half_span, half_span]; converged is false.
PropagationResult propagate_span(const TwoLevelDrive& drive, double half_span,
                                 const PropagatorSettings& settings,
                                 Basis basis = Basis::AdiabaticInteraction);

struct TraceSample {
    double t;
    double p1;
    double p2;
    double norm;
};

/// Diabatic populations sampled uniformly on the converged span.
std::vector<TraceSample> propagate_trace(const DiabaticModel& model,
                                         const PropagatorSettings& settings,
                                         std::size_t sample_count);

} // namespace glancing
