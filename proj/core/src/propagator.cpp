#include "glancing/propagator.hpp"

#include <cmath>
#include <complex>
#include <span>
#include <sstream>

#include "glancing/dopri.hpp"
#include "glancing/errors.hpp"

namespace glancing {
namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};
constexpr double kDiabaticTolScale = 1e-3;

// Instantaneous adiabatic frame: mixing angle theta with tan(2 theta) = V / eps,
// its rate, and the upper adiabatic energy E = sqrt(eps^2 + V^2).
struct Frame {
    double theta;
    double theta_rate;
    double energy;
};

Frame frame_at(const TwoLevelDrive& drive, double t) {
    const double epsilon = drive.epsilon(t);
    const double v = drive.coupling;
    const double energy_sq = epsilon * epsilon + v * v;
    return {0.5 * std::atan2(v, epsilon), -0.5 * v * drive.slope(t) / energy_sq,
            std::sqrt(energy_sq)};
}

// First-order superadiabatic amplitude leaking into the upper state over a
// semi-infinite tail, -theta' / (2 i E) per unit lower amplitude.
Complex tail_amplitude(const Frame& f) { return f.theta_rate / (2.0 * kI * f.energy); }

struct Amplitudes {
    Complex upper;
    Complex lower;
};

void check_settings(const PropagatorSettings& s) {
    if (!(s.rel_tol > 0.0) || !(s.abs_tol > 0.0) || !(s.convergence_tol > 0.0)) {
        throw DomainError("propagator: tolerances must be positive");
    }
    if (!(s.asymptotic_ratio > 1.0)) {
        throw DomainError("propagator: asymptotic_ratio must exceed 1");
    }
    if (!(s.ratio_growth > 1.0)) {
        throw DomainError("propagator: ratio_growth must exceed 1");
    }
    if (s.max_span_doublings < 0) {
        throw DomainError("propagator: max_span_doublings must be non-negative");
    }
}

// Adiabatic state at -T connected to |2> at -inf, with Phi(-T) = 0.
Amplitudes initial_adiabatic(const TwoLevelDrive& drive, double half_span) {
    const Complex upper = tail_amplitude(frame_at(drive, -half_span));
    return {upper, std::sqrt(1.0 - std::norm(upper))};
}

struct SpanOutcome {
    double probability;
    double norm_drift;
};

template <class Observer>
SpanOutcome run_adiabatic(const TwoLevelDrive& drive, double half_span,
                          const PropagatorSettings& settings, std::span<const double> samples,
                          Observer&& observe) {
    using Stepper = DormandPrince<5>;
    Stepper::Options options;
    options.rel_tol = settings.rel_tol;
    options.abs_tol = settings.abs_tol;
    options.initial_step = 1e-4 * half_span;
    options.absolute_components = {false, false, false, false, true};
    Stepper stepper(options);

    auto rhs = [&drive](double t, const Stepper::State& y, Stepper::State& dy) {
        const Frame f = frame_at(drive, t);
        const double c = std::cos(2.0 * y[4]);
        const double s = std::sin(2.0 * y[4]);
        // b+' = theta' e^{2i Phi} b-,  b-' = -theta' e^{-2i Phi} b+,  Phi' = E.
        dy[0] = f.theta_rate * (c * y[2] - s * y[3]);
        dy[1] = f.theta_rate * (s * y[2] + c * y[3]);
        dy[2] = -f.theta_rate * (c * y[0] + s * y[1]);
        dy[3] = -f.theta_rate * (c * y[1] - s * y[0]);
        dy[4] = f.energy;
    };

    const Amplitudes start = initial_adiabatic(drive, half_span);
    Stepper::State y{start.upper.real(), start.upper.imag(), start.lower.real(),
                     start.lower.imag(), 0.0};
    double t = -half_span;

    auto emit = [&](double at) {
        const Frame f = frame_at(drive, at);
        const Complex phase = std::polar(1.0, y[4]);
        const Complex a_up = Complex(y[0], y[1]) / phase;
        const Complex a_low = Complex(y[2], y[3]) * phase;
        const double cs = std::cos(f.theta);
        const double sn = std::sin(f.theta);
        observe(at, cs * a_up - sn * a_low, sn * a_up + cs * a_low);
    };

    for (double sample : samples) {
        stepper.advance(rhs, t, sample, y);
        emit(sample);
    }
    stepper.advance(rhs, t, half_span, y);

    const Complex upper(y[0], y[1]);
    const Complex lower(y[2], y[3]);
    const Frame end = frame_at(drive, half_span);
    const Complex asymptotic = upper - lower * std::polar(1.0, 2.0 * y[4]) * tail_amplitude(end);
    return {std::norm(asymptotic), std::abs(std::norm(upper) + std::norm(lower) - 1.0)};
}

SpanOutcome run_diabatic(const TwoLevelDrive& drive, double half_span,
                         const PropagatorSettings& settings) {
    using Stepper = DormandPrince<4>;
    // The diabatic frame resolves every cycle of the dynamical phase, so local
    // errors accumulate over far more steps than in the interaction picture.
    // Tighter tolerances keep its norm drift inside the unitarity budget.
    Stepper::Options options;
    options.rel_tol = settings.rel_tol * kDiabaticTolScale;
    options.abs_tol = settings.abs_tol * kDiabaticTolScale;
    options.initial_step = 1e-4 * half_span;
    Stepper stepper(options);

    const double v = drive.coupling;
    auto rhs = [&drive, v](double t, const Stepper::State& y, Stepper::State& dy) {
        const double epsilon = drive.epsilon(t);
        // c1' = -i (eps c1 + V c2),  c2' = -i (V c1 - eps c2).
        const double re1 = epsilon * y[0] + v * y[2];
        const double im1 = epsilon * y[1] + v * y[3];
        const double re2 = v * y[0] - epsilon * y[2];
        const double im2 = v * y[1] - epsilon * y[3];
        dy[0] = im1;
        dy[1] = -re1;
        dy[2] = im2;
        dy[3] = -re2;
    };

    // Same physical initial state as the adiabatic route (Phi(-T) = 0).
    const Amplitudes start = initial_adiabatic(drive, half_span);
    const Frame f0 = frame_at(drive, -half_span);
    const double cs0 = std::cos(f0.theta);
    const double sn0 = std::sin(f0.theta);
    const Complex c1 = cs0 * start.upper - sn0 * start.lower;
    const Complex c2 = sn0 * start.upper + cs0 * start.lower;
    Stepper::State y{c1.real(), c1.imag(), c2.real(), c2.imag()};
    double t = -half_span;
    stepper.advance(rhs, t, half_span, y);

    const Complex d1(y[0], y[1]);
    const Complex d2(y[2], y[3]);
    const Frame end = frame_at(drive, half_span);
    const double cs = std::cos(end.theta);
    const double sn = std::sin(end.theta);
    const Complex a_up = cs * d1 + sn * d2;
    const Complex a_low = -sn * d1 + cs * d2;
    // e^{-i Phi} b+(inf) = a+ - a- * tail; the dynamical phase cancels.
    const Complex asymptotic = a_up - a_low * tail_amplitude(end);
    return {std::norm(asymptotic), std::abs(std::norm(d1) + std::norm(d2) - 1.0)};
}

double half_span_for(const DiabaticModel& model, const PropagatorSettings& settings,
                     int refinement) {
    const double growth = std::pow(settings.ratio_growth, refinement);
    const double floor =
        settings.min_half_span * std::pow(growth, 1.0 / model.growth_order());
    return std::max(floor, model.asymptotic_time(settings.asymptotic_ratio * growth));
}

} // namespace

TwoLevelDrive make_drive(const DiabaticModel& model) {
    if (const auto* sp = model.superparabolic()) {
        const int n = sp->N;
        return {[n](double t) { return ipow(t, n); },
                [n](double t) { return n * ipow(t, n - 1); }, sp->alpha};
    }
    const Parabolic p = *model.parabolic();
    return {[p](double t) { return 0.5 * (p.A * t * t - p.B); },
            [p](double t) { return p.A * t; }, p.V0};
}

double initial_half_span(const DiabaticModel& model, const PropagatorSettings& settings) {
    check_settings(settings);
    return half_span_for(model, settings, 0);
}

PropagationResult propagate_span(const TwoLevelDrive& drive, double half_span,
                                 const PropagatorSettings& settings, Basis basis) {
    check_settings(settings);
    if (!(half_span > 0.0)) {
        throw DomainError("propagate_span: half_span must be positive");
    }
    if (!(drive.coupling > 0.0)) {
        throw DomainError("propagate_span: coupling must be positive");
    }
    const SpanOutcome outcome =
        basis == Basis::AdiabaticInteraction
            ? run_adiabatic(drive, half_span, settings, {},
                            [](double, Complex, Complex) {})
            : run_diabatic(drive, half_span, settings);
    return {outcome.probability, outcome.norm_drift, half_span, 0, false};
}

PropagationResult propagate(const DiabaticModel& model, const PropagatorSettings& settings,
                            Basis basis) {
    check_settings(settings);
    const TwoLevelDrive drive = make_drive(model);
    PropagationResult previous = propagate_span(drive, half_span_for(model, settings, 0),
                                                settings, basis);
    for (int k = 1; k <= settings.max_span_doublings; ++k) {
        PropagationResult current =
            propagate_span(drive, half_span_for(model, settings, k), settings, basis);
        current.doublings_used = k;
        if (std::abs(current.probability - previous.probability) < settings.convergence_tol) {
            current.converged = true;
            return current;
        }
        previous = current;
    }
    std::ostringstream message;
    message.precision(10);
    message << "propagate: " << model.describe() << " did not converge after "
            << settings.max_span_doublings << " span refinements (last P = "
            << previous.probability << ", T = " << previous.span_used << ")";
    throw NonConvergence(message.str());
}

std::vector<TraceSample> propagate_trace(const DiabaticModel& model,
                                         const PropagatorSettings& settings,
                                         std::size_t sample_count) {
    if (sample_count < 2) {
        throw DomainError("propagate_trace: sample_count must be at least 2");
    }
    const PropagationResult converged = propagate(model, settings);
    const double half_span = converged.span_used;
    std::vector<double> times(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i) {
        times[i] = -half_span + 2.0 * half_span * static_cast<double>(i) /
                                    static_cast<double>(sample_count - 1);
    }
    std::vector<TraceSample> trace;
    trace.reserve(sample_count);
    const TwoLevelDrive drive = make_drive(model);
    // The first sample coincides with the start of the span.
    const Amplitudes start = initial_adiabatic(drive, half_span);
    {
        const Frame f = frame_at(drive, -half_span);
        const Complex c1 = std::cos(f.theta) * start.upper - std::sin(f.theta) * start.lower;
        const Complex c2 = std::sin(f.theta) * start.upper + std::cos(f.theta) * start.lower;
        trace.push_back({times.front(), std::norm(c1), std::norm(c2),
                         std::norm(c1) + std::norm(c2)});
    }
    run_adiabatic(drive, half_span, settings, std::span<const double>(times).subspan(1),
                  [&trace](double t, Complex c1, Complex c2) {
                      trace.push_back({t, std::norm(c1), std::norm(c2),
                                       std::norm(c1) + std::norm(c2)});
                  });
    return trace;
}

} // namespace glancing
