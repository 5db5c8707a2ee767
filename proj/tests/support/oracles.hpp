#pragma once

// Reference computations that share no code with the library: brute-force
// series and generic quadrature. Slow, but independent.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// integral_0^1 sqrt(1 - y^{2N}) dy by tanh-sinh quadrature.
inline double nu_quadrature(int N) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(
        [N](double y) { return std::sqrt(1.0 - std::pow(y, 2 * N)); }, 0.0, 1.0);
}

/// arg Gamma(iy) = -pi/2 - gamma y + sum_k (y/k - atan(y/k)), summed to K terms
/// with the leading tail sum_{k>K} y^3/(3k^3) ~ y^3 / (6 (K + 1/2)^2) added.
inline double arg_gamma_series(double y, long K = 1'000'000) {
    double sum = 0.0;
    double compensation = 0.0;
    for (long k = K; k >= 1; --k) {
        const double ratio = y / static_cast<double>(k);
        const double term = (ratio - std::atan(ratio)) - compensation;
        const double next = sum + term;
        compensation = (next - sum) - term;
        sum = next;
    }
    const double tail = y * y * y / (6.0 * (K + 0.5) * (K + 0.5));
    return -std::numbers::pi / 2.0 - kEulerGamma * y + sum + tail;
}

/// ln |Gamma(iy)|^2 = ln(pi / (y sinh(pi y))).
inline double log_abs_gamma_imag_sq(double y) {
    return std::log(std::numbers::pi / (y * std::sinh(std::numbers::pi * y)));
}

} // namespace oracle
