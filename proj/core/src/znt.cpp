#include "glancing/znt.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "glancing/ddp.hpp"
#include "glancing/errors.hpp"
#include "glancing/specialfn.hpp"

namespace glancing::znt {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegeneracyThreshold = 1e-8;
constexpr int kScanPoints = 4001;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

// Minimizes f on [lo, hi]: coarse scan, then Brent on the bracketing cell.
double interior_minimum(const std::function<double(double)>& f, double lo, double hi,
                        const char* what) {
    const double width = (hi - lo) / (kScanPoints - 1);
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
        const double value = f(lo + i * width);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    if (best == 0 || best == kScanPoints - 1) {
        throw BracketingError(std::string("fit_parameters: ") + what +
                              " is not interior to the curve interval");
    }
    const auto [location, value] = boost::math::tools::brent_find_minima(
        f, lo + (best - 1) * width, lo + (best + 1) * width,
        std::numeric_limits<double>::digits / 2);
    (void)value;
    return location;
}

double integrate_real(const std::function<double(double)>& f, double from, double to) {
    if (from == to) {
        return 0.0;
    }
    const double lo = std::min(from, to);
    const double hi = std::max(from, to);
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-12);
    return from < to ? value : -value;
}

} // namespace

double single_passage_probability(double a_sq, double b_sq) {
    require_positive(a_sq, "single_passage_probability: a^2");
    const double radicand = b_sq * b_sq + 0.4 * a_sq + 0.7;
    const double denominator = b_sq + std::sqrt(radicand);
    if (!(denominator > 0.0)) {
        throw DomainError("single_passage_probability: nonpositive inner square root");
    }
    const double a = std::sqrt(a_sq);
    return std::exp(-(kPi / (4.0 * a)) * std::sqrt(2.0 / denominator));
}

double single_passage_parabolic(double alpha) {
    require_positive(alpha, "single_passage_parabolic: alpha");
    const double a32 = std::pow(alpha, 1.5);
    return std::exp(-(kPi * a32 / std::numbers::sqrt2) *
                    std::pow(0.1 / (alpha * alpha * alpha) + 0.7, -0.25));
}

double delta_psi(double a_sq, double sigma, double delta) {
    require_positive(a_sq, "delta_psi: a^2");
    require_positive(delta, "delta_psi: delta");
    const double root_a = std::pow(a_sq, 0.25);
    return (1.0 + 5.0 * root_a / (root_a + 0.8) * std::pow(10.0, -sigma)) * delta;
}

double stokes_phase(double delta_eff) {
    require_positive(delta_eff, "stokes_phase: delta");
    const double y = delta_eff / kPi;
    return -y + y * std::log(y) - specialfn::arg_gamma_imag(y) - kPi / 4.0;
}

double double_crossing_probability(double a_sq, double b_sq, double sigma, double delta) {
    const double p = single_passage_probability(a_sq, b_sq);
    const double psi = sigma + stokes_phase(delta_psi(a_sq, sigma, delta));
    const double s = std::sin(psi);
    return 4.0 * p * (1.0 - p) * s * s;
}

double tunneling_B(double x) {
    require_positive(x, "tunneling_B: x");
    return std::exp(std::log(2.0 * kPi) + (2.0 * x - 1.0) * std::log(x) -
                    2.0 * specialfn::log_gamma(x));
}

TunnelingTerms tunneling_terms(double a_sq, double sigma, double delta) {
    require_positive(a_sq, "tunneling_probability: a^2");
    require_positive(delta, "tunneling_probability: delta");
    require_positive(sigma, "tunneling_probability: sigma");

    TunnelingTerms terms{};
    terms.g1 = 1.8 * std::pow(a_sq, 0.23) * std::exp(-delta);
    terms.g2 = 3.0 * sigma / (kPi * delta) * std::log(1.2 + a_sq) - 1.0 / a_sq;
    terms.B = tunneling_B(sigma / kPi);

    const double sn = std::sin(sigma);
    const double cs = std::cos(sigma);
    const double sn2 = sn * sn;
    const double cs2 = cs * cs;
    const double growth = std::exp(sigma);

    terms.p = 1.0 / (1.0 + terms.B * growth * growth - terms.g2 * sn2);
    if (!(terms.p > 0.0 && terms.p < 1.0)) {
        throw DomainError("tunneling_probability: single-passage p = " + std::to_string(terms.p) +
                          " outside (0, 1)");
    }

    const double root_b = std::sqrt(terms.B);
    const double re_u1 = cs * (root_b * growth - terms.g1 * sn2 / (growth * root_b));
    const double radicand = terms.B * growth * growth -
                            terms.g1 * terms.g1 * sn2 * cs2 / (growth * growth * terms.B) +
                            2.0 * terms.g1 * cs2 - terms.g2;
    if (radicand < 0.0) {
        throw BranchFailure("tunneling_probability: Im U1 radicand is negative (" +
                            std::to_string(radicand) + ")");
    }
    const double im_u1 = sn * std::sqrt(radicand);
    terms.stokes_constant = {re_u1, im_u1};
    const double phase = std::sin(std::arg(terms.stokes_constant));
    terms.probability = 4.0 * terms.p * (1.0 - terms.p) * phase * phase;
    return terms;
}

double tunneling_probability(double a_sq, double sigma, double delta) {
    return tunneling_terms(a_sq, sigma, delta).probability;
}

AdiabaticCurves adiabatic_curves(const DiabaticModel& model, double t_min, double t_max) {
    if (!(t_max > t_min)) {
        throw DomainError("adiabatic_curves: empty interval");
    }
    return {[model](double t) { return adiabatic_levels(model, t).lower; },
            [model](double t) { return adiabatic_levels(model, t).upper; }, t_min, t_max};
}

FitResult fit_parameters(const AdiabaticCurves& curves) {
    if (!(curves.t_max > curves.t_min)) {
        throw DomainError("fit_parameters: empty interval");
    }
    const auto gap = [&curves](double t) { return curves.upper(t) - curves.lower(t); };
    const double t_b = interior_minimum(curves.upper, curves.t_min, curves.t_max,
                                        "minimum of the upper curve");
    const double t_t = interior_minimum([&curves](double t) { return -curves.lower(t); },
                                        curves.t_min, curves.t_max,
                                        "maximum of the lower curve");
    const double t_0 = interior_minimum(gap, curves.t_min, curves.t_max, "minimum of the gap");

    const double gap_0 = gap(t_0);
    if (!(gap_0 > 0.0)) {
        throw DomainError("fit_parameters: upper curve must lie above the lower curve");
    }
    FitResult fit{};
    fit.geometry = {t_b, t_t, t_0, 0.5 * gap_0, gap(t_b) * gap(t_t) / (gap_0 * gap_0)};

    const double d_sq = fit.geometry.d_sq;
    const double spread = t_t * t_t - t_b * t_b;
    if (std::abs(d_sq - 1.0) < kDegeneracyThreshold ||
        std::abs(spread) < kDegeneracyThreshold) {
        throw DegenerateGeometry(
            "fit_parameters: t_b, t_t and t_0 coincide (d^2 = 1); the fit formulas "
            "reduce to 0/0");
    }
    const double root = std::sqrt(d_sq - 1.0);
    const double v0 = fit.geometry.v0_fit;
    fit.a_sq = root / (2.0 * v0 * v0 * std::abs(spread));
    fit.b_sq = root * (t_t * t_t + t_b * t_b) / std::abs(spread);
    return fit;
}

ComplexValue znt_phase_estimate(const FitResult& fit, const AdiabaticCurves& curves) {
    const FitGeometry& g = fit.geometry;
    if (std::abs(g.d_sq - 1.0) < kDegeneracyThreshold ||
        std::abs(g.t_t * g.t_t - g.t_b * g.t_b) < kDegeneracyThreshold ||
        g.t_b == g.t_t) {
        throw DegenerateGeometry("znt_phase_estimate: degenerate geometry");
    }
    require_positive(fit.a_sq, "znt_phase_estimate: a^2");

    const double upper_part = integrate_real(curves.upper, 0.0, g.t_b);
    const double lower_part = integrate_real(curves.lower, 0.0, g.t_t);
    const double a = std::sqrt(fit.a_sq);
    const double b_sq = fit.b_sq;

    const ComplexValue shift_denominator =
        std::sqrt(fit.a_sq * ComplexValue(b_sq * b_sq, 1.0)) * (g.t_b - g.t_t);
    const ComplexValue shift = (g.t_0 - 0.5 * (g.t_b + g.t_t)) / shift_denominator *
                               std::sqrt(g.d_sq / (g.d_sq - 1.0));

    // int_0^i sqrt((1 + t^2) / (t + b^2)) dt with t = i s.
    const auto integrand = [b_sq](double s) {
        return std::sqrt(ComplexValue(1.0 - s * s, 0.0) / ComplexValue(b_sq, s));
    };
    boost::math::quadrature::tanh_sinh<double> quadrature;
    const double re = quadrature.integrate([&](double s) { return integrand(s).real(); }, 0.0,
                                           1.0);
    const double im = quadrature.integrate([&](double s) { return integrand(s).imag(); }, 0.0,
                                           1.0);
    const ComplexValue segment = ComplexValue(0.0, 1.0) * ComplexValue(re, im);

    const ComplexValue correction = shift + segment / (2.0 * a);
    return upper_part - lower_part + std::sqrt(b_sq / fit.a_sq) + correction;
}

ZntInputs superparabolic_inputs(int N, double alpha) {
    const DiabaticModel model(Superparabolic{N, alpha});
    const ddp::PhaseIntegral phase = ddp::dominant_phase(N, alpha);
    return {reduced_parameters(model).a_sq, phase.sigma, phase.delta};
}

double superparabolic_double_crossing(int N, double alpha) {
    const ZntInputs in = superparabolic_inputs(N, alpha);
    return double_crossing_probability(in.a_sq, 0.0, in.sigma, in.delta);
}

double superparabolic_tunneling(int N, double alpha) {
    const ZntInputs in = superparabolic_inputs(N, alpha);
    return tunneling_probability(in.a_sq, in.sigma, in.delta);
}

} // namespace glancing::znt
