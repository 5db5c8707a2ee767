#include "glancing/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "glancing/errors.hpp"

namespace glancing::specialfn {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

// B_{2m} / (2m (2m - 1)) for m = 1..10.
constexpr std::array<double, 10> kStirlingCoefficients = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Stirling's series for ln Gamma(z), |z| large and Re z > 0.
std::complex<double> stirling_log_gamma(std::complex<double> z) {
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv_sq = inv * inv;
    std::complex<double> term = inv;
    std::complex<double> correction = 0.0;
    for (double coefficient : kStirlingCoefficients) {
        correction += coefficient * term;
        term *= inv_sq;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + correction;
}

// Shift so that |n + iy| is large enough for ten Stirling terms to reach
// double precision.
constexpr int kStirlingShift = 16;

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite, got " +
                          std::to_string(x));
    }
    if (x < 0.5) {
        // Reflection keeps the Lanczos sum in its well-conditioned range.
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double shifted = x - 1.0;
    double series = kLanczosCoefficients[0];
    for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
        series += kLanczosCoefficients[i] / (shifted + static_cast<double>(i));
    }
    const double t = shifted + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (shifted + 0.5) * std::log(t) - t + std::log(series);
}

double gamma(double x) { return std::exp(log_gamma(x)); }

double beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw DomainError("beta: arguments must be positive");
    }
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

std::complex<double> log_gamma_imag(double y) {
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw DomainError("log_gamma_imag: argument must be positive and finite");
    }
    // ln Gamma(iy) = ln Gamma(n + iy) - sum_{j<n} ln(j + iy). Every factor
    // sits in the closed first quadrant, so the principal logs add up to the
    // continuous branch.
    std::complex<double> result =
        stirling_log_gamma({static_cast<double>(kStirlingShift), y});
    for (int j = 0; j < kStirlingShift; ++j) {
        result -= std::log(std::complex<double>(static_cast<double>(j), y));
    }
    return result;
}

double arg_gamma_imag(double y) { return log_gamma_imag(y).imag(); }

double nu_coefficient(int N) {
    if (N <= 0) {
        throw DomainError("nu_coefficient: N must be a positive integer, got " +
                          std::to_string(N));
    }
    const double inv = 1.0 / (2.0 * N);
    return inv * beta(inv, 1.5);
}

double parabolic_phase_constant() {
    return std::sqrt(kPi) * gamma(0.25) / (3.0 * std::numbers::sqrt2 * gamma(0.75));
}

} // namespace glancing::specialfn
