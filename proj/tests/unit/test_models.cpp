#include <gtest/gtest.h>

#include <cmath>

#include "glancing/errors.hpp"
#include "glancing/models.hpp"

using namespace glancing;

TEST(DiabaticModel, ValidatesInvariants) {
    EXPECT_THROW(DiabaticModel(Superparabolic{3, 1.0}), DomainError);
    EXPECT_THROW(DiabaticModel(Superparabolic{0, 1.0}), DomainError);
    EXPECT_THROW(DiabaticModel(Superparabolic{2, 0.0}), DomainError);
    EXPECT_THROW(DiabaticModel(Superparabolic{2, -1.0}), DomainError);
    EXPECT_THROW(DiabaticModel(Parabolic{0.0, 0.0, 1.0}), DomainError);
    EXPECT_THROW(DiabaticModel(Parabolic{1.0, 0.0, 0.0}), DomainError);
    EXPECT_NO_THROW(DiabaticModel(Parabolic{1.0, -3.0, 0.2}));
    EXPECT_NO_THROW(DiabaticModel(Superparabolic{10, 0.01}));
}

TEST(Diabatic, ReferenceValues) {
    const auto a = diabatic(DiabaticModel(Superparabolic{2, 1.0}), 0.0);
    EXPECT_DOUBLE_EQ(a.epsilon, 0.0);
    EXPECT_DOUBLE_EQ(a.coupling, 1.0);

    const auto b = diabatic(DiabaticModel(Superparabolic{6, 0.5}), -1.0);
    EXPECT_DOUBLE_EQ(b.epsilon, 1.0);
    EXPECT_DOUBLE_EQ(b.coupling, 0.5);

    const auto c = diabatic(DiabaticModel(Parabolic{1.0, 0.0, 0.5}), 2.0);
    EXPECT_DOUBLE_EQ(c.epsilon, 2.0);
    EXPECT_DOUBLE_EQ(c.coupling, 0.5);
}

TEST(Diabatic, SlopeMatchesFiniteDifference) {
    const DiabaticModel models[] = {DiabaticModel(Superparabolic{2, 1.0}),
                                    DiabaticModel(Superparabolic{6, 0.7}),
                                    DiabaticModel(Parabolic{0.8, 0.3, 0.5})};
    const double h = 1e-6;
    for (const auto& model : models) {
        for (double t : {-1.3, -0.2, 0.4, 1.1}) {
            const double fd =
                (diabatic(model, t + h).epsilon - diabatic(model, t - h).epsilon) / (2 * h);
            EXPECT_NEAR(diabatic_slope(model, t), fd, 1e-7 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(AdiabaticLevels, ReferenceValues) {
    const auto a = adiabatic_levels(DiabaticModel(Superparabolic{2, 1.0}), 0.0);
    EXPECT_DOUBLE_EQ(a.lower, -1.0);
    EXPECT_DOUBLE_EQ(a.upper, 1.0);

    const auto b = adiabatic_levels(DiabaticModel(Superparabolic{2, 1.0}), 1.0);
    EXPECT_NEAR(b.lower, -std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(b.upper, std::sqrt(2.0), 1e-15);

    const auto c = adiabatic_levels(DiabaticModel(Parabolic{1.0, 1.0, 0.5}), 1.0);
    EXPECT_DOUBLE_EQ(c.lower, -0.5);
    EXPECT_DOUBLE_EQ(c.upper, 0.5);
}

TEST(AdiabaticLevels, GapNeverBelowTwiceCoupling) {
    for (int n : {2, 4, 6, 10}) {
        for (double alpha : {0.1, 1.0, 3.0}) {
            const DiabaticModel model(Superparabolic{n, alpha});
            for (double t = -3.0; t <= 3.0; t += 0.01) {
                const auto levels = adiabatic_levels(model, t);
                EXPECT_GE(levels.upper - levels.lower, 2.0 * alpha);
                EXPECT_EQ(levels.upper, -levels.lower);
            }
        }
    }
}

TEST(NonadiabaticCoupling, ReferenceValues) {
    const DiabaticModel model(Superparabolic{2, 1.0});
    EXPECT_DOUBLE_EQ(nonadiabatic_coupling(model, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(nonadiabatic_coupling(model, 1.0), 0.5);
    EXPECT_LT(std::abs(nonadiabatic_coupling(model, 1e4)), 1e-11);
}

TEST(NonadiabaticCoupling, OddInTimeAndDecaying) {
    for (int n : {2, 4, 6, 10}) {
        const DiabaticModel model(Superparabolic{n, 0.8});
        for (double t = 0.05; t < 4.0; t += 0.05) {
            EXPECT_DOUBLE_EQ(nonadiabatic_coupling(model, -t), -nonadiabatic_coupling(model, t));
        }
        EXPECT_LT(std::abs(nonadiabatic_coupling(model, 50.0)), 1e-3);
    }
}

TEST(ReducedParameters, Conventions) {
    const auto p = reduced_parameters(DiabaticModel(Parabolic{0.25, 0.0, 1.0}));
    EXPECT_DOUBLE_EQ(p.a_sq, 0.25);
    EXPECT_DOUBLE_EQ(p.b_sq, 0.0);

    const auto q = reduced_parameters(DiabaticModel(Parabolic{1.7, -0.4, 1.0}));
    EXPECT_DOUBLE_EQ(q.a_sq, 1.7);
    EXPECT_DOUBLE_EQ(q.b_sq, -0.4);

    const auto s = reduced_parameters(DiabaticModel(Superparabolic{2, 1.0}));
    EXPECT_DOUBLE_EQ(s.a_sq, 0.25);
    EXPECT_DOUBLE_EQ(s.b_sq, 0.0);

    const auto r = reduced_parameters(DiabaticModel(Superparabolic{6, 2.0}));
    EXPECT_DOUBLE_EQ(r.a_sq, 1.0 / 32.0);
    EXPECT_DOUBLE_EQ(r.b_sq, 0.0);
}

TEST(AsymptoticTime, ReachesRequestedRatio) {
    const DiabaticModel sp(Superparabolic{6, 0.4});
    const double t = sp.asymptotic_time(100.0);
    EXPECT_NEAR(diabatic(sp, t).epsilon, 100.0 * 0.4, 1e-9);

    const DiabaticModel pb(Parabolic{2.0, 1.0, 0.3});
    const double u = pb.asymptotic_time(100.0);
    EXPECT_NEAR(diabatic(pb, u).epsilon, 100.0 * 0.3, 1e-9);
}
