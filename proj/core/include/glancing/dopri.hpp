#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "glancing/errors.hpp"

namespace glancing {

/// Embedded Dormand-Prince 5(4) pair with FSAL and a PI step-size controller.
///
/// The stepper keeps its step size and controller memory between calls to
/// advance(), so a trajectory can be integrated piecewise (for sampling)
/// without restarting the controller. Components flagged in
/// `absolute_components` are measured against rel_tol * 1 + abs_tol instead of
/// their own magnitude; use it for accumulated phases that grow without bound.
template <std::size_t K>
class DormandPrince {
public:
    using State = std::array<double, K>;

    struct Options {
        double rel_tol = 1e-10;
        double abs_tol = 1e-12;
        double initial_step = 1e-3;
        std::size_t max_steps = 50'000'000;
        std::array<bool, K> absolute_components{};
    };

    explicit DormandPrince(Options options) : options_(options), step_(options.initial_step) {}

    /// Integrates y from t to t_end (t_end > t). Throws ToleranceFailure when
    /// the controller stalls or the step budget runs out.
    template <class Rhs>
    void advance(Rhs&& rhs, double& t, double t_end, State& y) {
        if (!(t_end > t)) {
            return;
        }
        State k1;
        rhs(t, y, k1);
        while (t < t_end) {
            if (++steps_ > options_.max_steps) {
                throw ToleranceFailure("Dormand-Prince: step budget of " +
                                       std::to_string(options_.max_steps) + " exhausted");
            }
            double h = std::min(step_, t_end - t);
            const bool last = (t + h >= t_end);
            if (last) {
                h = t_end - t;
            }
            const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                                 std::max(1.0, std::abs(t));
            if (h < floor && !last) {
                throw ToleranceFailure("Dormand-Prince: step size underflow at t = " +
                                       std::to_string(t));
            }

            State k2, k3, k4, k5, k6, k7, tmp, y_new;
            for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
            rhs(t + c2 * h, tmp, k2);
            for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            rhs(t + c3 * h, tmp, k3);
            for (std::size_t i = 0; i < K; ++i)
                tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(t + c4 * h, tmp, k4);
            for (std::size_t i = 0; i < K; ++i)
                tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(t + c5 * h, tmp, k5);
            for (std::size_t i = 0; i < K; ++i)
                tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                     a65 * k5[i]);
            rhs(t + h, tmp, k6);
            for (std::size_t i = 0; i < K; ++i)
                y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                       a76 * k6[i]);
            rhs(t + h, y_new, k7);

            double err_sq = 0.0;
            for (std::size_t i = 0; i < K; ++i) {
                const double delta = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                          e6 * k6[i] + e7 * k7[i]);
                const double magnitude =
                    options_.absolute_components[i] ? 1.0
                                                    : std::max(std::abs(y[i]), std::abs(y_new[i]));
                const double scale = options_.abs_tol + options_.rel_tol * magnitude;
                err_sq += (delta / scale) * (delta / scale);
            }
            const double err = std::sqrt(err_sq / static_cast<double>(K));
            if (!std::isfinite(err)) {
                throw ToleranceFailure("Dormand-Prince: non-finite error estimate");
            }

            if (err <= 1.0) {
                t = last ? t_end : t + h;
                y = y_new;
                k1 = k7;
                ++accepted_;
                const double e = std::max(err, 1e-10);
                double factor = kSafety * std::pow(e, -kAlpha) * std::pow(err_prev_, kBeta);
                factor = std::clamp(factor, kMinFactor, rejected_last_ ? 1.0 : kMaxFactor);
                err_prev_ = e;
                rejected_last_ = false;
                // A truncated final step says nothing about the natural size.
                if (!last || h >= step_) {
                    step_ = h * factor;
                }
            } else {
                const double factor = std::max(kMinFactor, kSafety * std::pow(err, -0.2));
                step_ = h * factor;
                rejected_last_ = true;
            }
        }
    }

    [[nodiscard]] std::size_t accepted_steps() const noexcept { return accepted_; }
    [[nodiscard]] std::size_t attempted_steps() const noexcept { return steps_; }

private:
    static constexpr double kSafety = 0.9;
    static constexpr double kAlpha = 0.7 / 5.0;
    static constexpr double kBeta = 0.4 / 5.0;
    static constexpr double kMinFactor = 0.2;
    static constexpr double kMaxFactor = 5.0;

    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    // Fifth-order weights minus the embedded fourth-order ones.
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    Options options_;
    double step_;
    double err_prev_ = 1.0;
    bool rejected_last_ = false;
    std::size_t steps_ = 0;
    std::size_t accepted_ = 0;
};

} // namespace glancing
