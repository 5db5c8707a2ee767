#include "glancing/ddp.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "glancing/errors.hpp"
#include "glancing/specialfn.hpp"

namespace glancing::ddp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr ComplexValue kI{0.0, 1.0};

void check_glancing(int N, double alpha) {
    if (N < 2 || N % 2 != 0) {
        throw DomainError("ddp: N must be even and >= 2, got " + std::to_string(N));
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("ddp: alpha must be positive");
    }
}

double zero_angle(int N, int k) { return kPi * (2.0 * k - 1.0) / (2.0 * N); }

ComplexValue complex_pow(ComplexValue z, int n) {
    ComplexValue result = 1.0;
    while (n > 0) {
        if (n & 1) {
            result *= z;
        }
        z *= z;
        n >>= 1;
    }
    return result;
}

// theta'(t) = -V eps'(t) / (2 (eps^2 + V^2)) continued to complex t.
ComplexValue mixing_rate(const DiabaticModel& model, ComplexValue t) {
    ComplexValue epsilon;
    ComplexValue slope;
    if (const auto* sp = model.superparabolic()) {
        const ComplexValue lower = complex_pow(t, sp->N - 1);
        epsilon = lower * t;
        slope = static_cast<double>(sp->N) * lower;
    } else {
        const auto& p = *model.parabolic();
        epsilon = 0.5 * (p.A * t * t - p.B);
        slope = p.A * t;
    }
    const double v = model.coupling();
    return -v * slope / (2.0 * (epsilon * epsilon + v * v));
}

constexpr int kRichardsonStages = 6;
constexpr double kFirstOffset = 1e-2;

} // namespace

std::vector<ZeroPoint> zero_points(int N, double alpha) {
    check_glancing(N, alpha);
    const double radius = std::pow(alpha, 1.0 / N);
    std::vector<ZeroPoint> zeros;
    zeros.reserve(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) {
        zeros.push_back({k, std::polar(radius, zero_angle(N, k))});
    }
    return zeros;
}

double phase_modulus(int N, double alpha) {
    check_glancing(N, alpha);
    return 2.0 * specialfn::nu_coefficient(N) * std::pow(alpha, (N + 1.0) / N);
}

ComplexValue phase_integral(int N, double alpha, int k) {
    check_glancing(N, alpha);
    if (k < 1 || k > N) {
        throw DomainError("phase_integral: k must lie in 1..N, got " + std::to_string(k));
    }
    return std::polar(phase_modulus(N, alpha), zero_angle(N, k));
}

PhaseIntegral dominant_phase(int N, double alpha) {
    const ComplexValue d = phase_integral(N, alpha, 1);
    return {d.real(), d.imag()};
}

ComplexValue residue_prefactor(const DiabaticModel& model, ComplexValue t_c) {
    const double radius = std::abs(t_c);
    if (!(radius > 0.0)) {
        throw DomainError("residue_prefactor: zero point must be nonzero");
    }
    const ComplexValue inward = -t_c / radius;

    // table[j][m]: m-th Richardson column built from offsets h_0..h_j.
    std::array<std::array<ComplexValue, kRichardsonStages>, kRichardsonStages> table{};
    for (int j = 0; j < kRichardsonStages; ++j) {
        const double h = kFirstOffset * std::ldexp(1.0, -j) * radius;
        const ComplexValue offset = h * inward;
        table[j][0] = 4.0 * kI * offset * mixing_rate(model, t_c + offset);
        for (int m = 1; m <= j; ++m) {
            const double factor = std::ldexp(1.0, m) - 1.0;
            table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / factor;
        }
    }
    const ComplexValue best = table[kRichardsonStages - 1][kRichardsonStages - 1];
    const ComplexValue previous = table[kRichardsonStages - 1][kRichardsonStages - 2];
    const double spread = std::abs(best - previous);
    if (!std::isfinite(spread) || spread > 1e-4 * std::max(1.0, std::abs(best))) {
        throw NonSimpleZero("residue_prefactor: extrapolation toward t_c did not settle");
    }
    return best;
}

double ddp_probability(int N, double alpha) {
    const double eta = phase_modulus(N, alpha);
    double sum = 0.0;
    for (int k = 1; k <= N / 2; ++k) {
        const double angle = zero_angle(N, k);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(-eta * std::sin(angle)) * std::sin(eta * std::cos(angle));
    }
    return 4.0 * sum * sum;
}

double ddp_probability_from_residues(int N, double alpha) {
    const DiabaticModel model(Superparabolic{N, alpha});
    ComplexValue sum = 0.0;
    for (const ZeroPoint& zero : zero_points(N, alpha)) {
        sum += residue_prefactor(model, zero.value) *
               std::exp(kI * phase_integral(N, alpha, zero.k));
    }
    return std::norm(sum);
}

double ddp_parabolic_closed_form(double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("ddp_parabolic_closed_form: alpha must be positive");
    }
    const double x = specialfn::parabolic_phase_constant() * std::pow(alpha, 1.5);
    const double s = std::sin(x);
    return 4.0 * std::exp(-2.0 * x) * s * s;
}

double ddp_single_zero(double eta, int N) {
    if (!(eta > 0.0)) {
        throw DomainError("ddp_single_zero: eta must be positive");
    }
    if (N < 1) {
        throw DomainError("ddp_single_zero: N must be positive");
    }
    return std::exp(-2.0 * eta * std::sin(kPi / (2.0 * N)));
}

} // namespace glancing::ddp
