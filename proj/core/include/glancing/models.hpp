#pragma once

#include <string>
#include <variant>

// Two-level diabatic models H(t) = [[eps(t), V], [V, -eps(t)]] in units with
// hbar = 1, and the adiabatic quantities derived from them.

namespace glancing {

/// eps(t) = t^N, V = alpha, N even.
struct Superparabolic {
    int N = 2;
    double alpha = 1.0;
};

/// eps(t) = (A t^2 - B) / 2, V = V0.
struct Parabolic {
    double A = 1.0;
    double B = 0.0;
    double V0 = 0.5;
};

class DiabaticModel {
public:
    /// Throws DomainError when the parameters violate the model invariants.
    DiabaticModel(Superparabolic model);
    DiabaticModel(Parabolic model);

    [[nodiscard]] const std::variant<Superparabolic, Parabolic>& variant() const noexcept {
        return model_;
    }
    [[nodiscard]] bool is_superparabolic() const noexcept {
        return std::holds_alternative<Superparabolic>(model_);
    }
    [[nodiscard]] const Superparabolic* superparabolic() const noexcept {
        return std::get_if<Superparabolic>(&model_);
    }
    [[nodiscard]] const Parabolic* parabolic() const noexcept {
        return std::get_if<Parabolic>(&model_);
    }

    /// The constant diabatic coupling V.
    [[nodiscard]] double coupling() const noexcept;

    /// Half-width T with |eps(t)| >= ratio * V for |t| >= T; the span on
    /// which the levels are asymptotically separated.
    [[nodiscard]] double asymptotic_time(double ratio) const;

    /// Power with which |eps| grows at large |t| (N, or 2 for parabolic).
    [[nodiscard]] int growth_order() const noexcept;

    [[nodiscard]] std::string describe() const;

private:
    std::variant<Superparabolic, Parabolic> model_;
};

struct DiabaticValue {
    double epsilon;
    double coupling;
};

struct AdiabaticLevels {
    double lower;
    double upper;
};

struct ReducedParameters {
    double a_sq;
    double b_sq;
};

/// (eps(t), V(t)).
DiabaticValue diabatic(const DiabaticModel& model, double t);

/// d eps / dt.
double diabatic_slope(const DiabaticModel& model, double t);

/// -+ sqrt(eps^2 + V^2).
AdiabaticLevels adiabatic_levels(const DiabaticModel& model, double t);

/// gamma(t) = (V eps' - eps V') / (2 (eps^2 + V^2)), taking the + branch.
double nonadiabatic_coupling(const DiabaticModel& model, double t);

/// (a^2, b^2) of the reduced Landau-Zener problem. Parabolic maps to (A, B);
/// superparabolic models use the N = 2 relation a^2 = 1 / (4 alpha^3) for
/// every N, with b^2 = 0 for glancing.
ReducedParameters reduced_parameters(const DiabaticModel& model);

/// Small helper: x^n for non-negative integer n by repeated squaring.
constexpr double ipow(double x, int n) noexcept {
    double result = 1.0;
    while (n > 0) {
        if (n & 1) {
            result *= x;
        }
        x *= x;
        n >>= 1;
    }
    return result;
}

} // namespace glancing
