#include "glancing/models.hpp"

#include <cmath>
#include <sstream>

#include "glancing/errors.hpp"

namespace glancing {

DiabaticModel::DiabaticModel(Superparabolic model) : model_(model) {
    if (model.N < 2 || model.N % 2 != 0) {
        throw DomainError("superparabolic model needs an even N >= 2, got N = " +
                          std::to_string(model.N));
    }
    if (!(model.alpha > 0.0) || !std::isfinite(model.alpha)) {
        throw DomainError("superparabolic model needs alpha > 0");
    }
}

DiabaticModel::DiabaticModel(Parabolic model) : model_(model) {
    if (!(model.A > 0.0) || !std::isfinite(model.A)) {
        throw DomainError("parabolic model needs A > 0");
    }
    if (!(model.V0 > 0.0) || !std::isfinite(model.V0)) {
        throw DomainError("parabolic model needs V0 > 0");
    }
    if (!std::isfinite(model.B)) {
        throw DomainError("parabolic model needs a finite B");
    }
}

double DiabaticModel::coupling() const noexcept {
    if (const auto* sp = superparabolic()) {
        return sp->alpha;
    }
    return parabolic()->V0;
}

double DiabaticModel::asymptotic_time(double ratio) const {
    if (const auto* sp = superparabolic()) {
        return std::pow(ratio * sp->alpha, 1.0 / sp->N);
    }
    const auto& p = *parabolic();
    return std::sqrt(std::max(0.0, 2.0 * ratio * p.V0 + p.B) / p.A);
}

int DiabaticModel::growth_order() const noexcept {
    if (const auto* sp = superparabolic()) {
        return sp->N;
    }
    return 2;
}

std::string DiabaticModel::describe() const {
    std::ostringstream out;
    out.precision(17);
    if (const auto* sp = superparabolic()) {
        out << "superparabolic(N=" << sp->N << ", alpha=" << sp->alpha << ")";
    } else {
        const auto& p = *parabolic();
        out << "parabolic(A=" << p.A << ", B=" << p.B << ", V0=" << p.V0 << ")";
    }
    return out.str();
}

DiabaticValue diabatic(const DiabaticModel& model, double t) {
    if (const auto* sp = model.superparabolic()) {
        return {ipow(t, sp->N), sp->alpha};
    }
    const auto& p = *model.parabolic();
    return {0.5 * (p.A * t * t - p.B), p.V0};
}

double diabatic_slope(const DiabaticModel& model, double t) {
    if (const auto* sp = model.superparabolic()) {
        return sp->N * ipow(t, sp->N - 1);
    }
    return model.parabolic()->A * t;
}

AdiabaticLevels adiabatic_levels(const DiabaticModel& model, double t) {
    const auto [epsilon, coupling] = diabatic(model, t);
    const double half_gap = std::hypot(epsilon, coupling);
    return {-half_gap, half_gap};
}

double nonadiabatic_coupling(const DiabaticModel& model, double t) {
    const auto [epsilon, coupling] = diabatic(model, t);
    const double denominator = epsilon * epsilon + coupling * coupling;
    if (denominator == 0.0) {
        throw DomainError("nonadiabatic_coupling: adiabatic levels are degenerate");
    }
    // Constant coupling: the eps * dV/dt term vanishes.
    return coupling * diabatic_slope(model, t) / (2.0 * denominator);
}

ReducedParameters reduced_parameters(const DiabaticModel& model) {
    if (const auto* sp = model.superparabolic()) {
        return {1.0 / (4.0 * sp->alpha * sp->alpha * sp->alpha), 0.0};
    }
    const auto& p = *model.parabolic();
    return {p.A, p.B};
}

} // namespace glancing
