#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "camlab/moment.hpp"
#include "camlab/sphere.hpp"
#include "test_util.hpp"

using namespace camlab;

namespace {

const auto z1_field = [](const Coords6& c) { return c[2]; };
const auto x1_field = [](const Coords6& c) { return c[0]; };

}  // namespace

TEST(SpherePoint, ConstructorProjects) {
    SpherePoint p(3.0, 4.0, 12.0);
    EXPECT_NEAR(p.x() * p.x() + p.y() * p.y() + p.z() * p.z(), 1.0, 1e-15);
    EXPECT_THROW(SpherePoint(0.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(SpherePoint(NAN, 0.0, 1.0), DomainError);
}

TEST(SymplecticWeight, RejectsNonPositive) {
    EXPECT_THROW(SymplecticWeight(0.0), DomainError);
    EXPECT_THROW(SymplecticWeight(-1.0), DomainError);
    EXPECT_NO_THROW(SymplecticWeight(0.5));
}

TEST(PoissonBracket, AntisymmetricAndBilinear) {
    const SymplecticWeight r(2.0);
    const auto f = [](const Coords6& c) { return c[0] * c[4] + c[2] * c[2] * c[5]; };
    const auto g = [](const Coords6& c) { return c[1] - 0.3 * c[3] * c[2]; };
    const auto h = [](const Coords6& c) { return c[5] * c[5] + c[0]; };
    for (const auto& p : testutil::random_points(200)) {
        EXPECT_NEAR(poisson_bracket(f, f, p, r), 0.0, 1e-9);
        EXPECT_NEAR(poisson_bracket(f, g, p, r) + poisson_bracket(g, f, p, r), 0.0, 1e-8);
        const auto combo = [&](const Coords6& c) { return 2.0 * g(c) - 0.7 * h(c); };
        const double lhs = poisson_bracket(f, combo, p, r);
        const double rhs = 2.0 * poisson_bracket(f, g, p, r) - 0.7 * poisson_bracket(f, h, p, r);
        EXPECT_NEAR(lhs, rhs, 1e-8);
    }
}

// {z1, x1} = d/dt x1 along the flow of z1, which is positive rotation: -y1.
TEST(PoissonBracket, SignConventionMatchesFlow) {
    const SymplecticWeight r(1.0);
    const SpherePoint other(0.3, -0.2, 0.9);
    EXPECT_NEAR(poisson_bracket(z1_field, x1_field, {SpherePoint(1, 0, 0), other}, r), 0.0, 1e-9);
    EXPECT_NEAR(poisson_bracket(z1_field, x1_field, {SpherePoint(0, 1, 0), other}, r), -1.0, 1e-9);

    const ProductPoint p{SpherePoint(1, 1, 0), other};
    const double bracket = poisson_bracket(z1_field, x1_field, p, r);
    EXPECT_NEAR(bracket, -1.0 / std::sqrt(2.0), 1e-9);

    const double h = 1e-4;
    const double forward = hamiltonian_flow(z1_field, p, r, h, 1e-5).p1.x();
    const double backward = hamiltonian_flow(z1_field, p, r, -h, 1e-5).p1.x();
    EXPECT_NEAR((forward - backward) / (2 * h), bracket, 1e-7);
}

TEST(PoissonBracket, SecondFactorScaledByInverseWeight) {
    const auto z2_field = [](const Coords6& c) { return c[5]; };
    const auto x2_field = [](const Coords6& c) { return c[3]; };
    const ProductPoint p{SpherePoint(0.2, 0.4, 0.8), SpherePoint(0.0, 1.0, 0.0)};
    EXPECT_NEAR(poisson_bracket(z2_field, x2_field, p, SymplecticWeight(4.0)), -0.25, 1e-9);
}

TEST(PoissonBracket, NonFiniteFieldIsAnError) {
    const auto bad = [](const Coords6&) { return std::numeric_limits<double>::infinity(); };
    const ProductPoint p{SpherePoint::north(), SpherePoint::south()};
    EXPECT_THROW(poisson_bracket(bad, z1_field, p, SymplecticWeight(1.0)), NumericError);
}

TEST(PoissonBracket, MomentMapsCommute) {
    for (double rv : {0.5, 1.0, 2.0}) {
        const SymplecticWeight r(rv);
        for (const auto& f : testutil::listed_couplings()) {
            const auto j = j_field(r);
            const auto h = h_field(f);
            for (const auto& p : testutil::random_points(300, 7))
                ASSERT_LT(std::abs(poisson_bracket(j, h, p, r)), 1e-8) << "R=" << rv << " f=" << f.name();
        }
    }
}

TEST(HamiltonianFlow, ZeroTimeIsIdentity) {
    const auto p = testutil::random_points(1)[0];
    const auto q = hamiltonian_flow(j_field(SymplecticWeight(1.0)), p, SymplecticWeight(1.0), 0.0, 1e-3);
    EXPECT_EQ(p, q);
}

TEST(HamiltonianFlow, RejectsBadStep) {
    const auto p = testutil::random_points(1)[0];
    EXPECT_THROW(hamiltonian_flow(z1_field, p, SymplecticWeight(1.0), 1.0, 0.0), DomainError);
    EXPECT_THROW(hamiltonian_flow(z1_field, p, SymplecticWeight(1.0), 1.0, -1e-3), DomainError);
}

// Flow of J_R rotates both factors about their z-axes at unit speed.
TEST(HamiltonianFlow, MatchesAnalyticRotation) {
    const SymplecticWeight r(2.0);
    for (const auto& p : testutil::random_points(3, 11)) {
        const double t = 1.3;
        const auto q = hamiltonian_flow(j_field(r), p, r, t, 1e-3);
        const double c = std::cos(t), s = std::sin(t);
        const ProductPoint expected{SpherePoint(c * p.p1.x() - s * p.p1.y(), s * p.p1.x() + c * p.p1.y(), p.p1.z()),
                                    SpherePoint(c * p.p2.x() - s * p.p2.y(), s * p.p2.x() + c * p.p2.y(), p.p2.z())};
        EXPECT_LT(testutil::max_abs_diff(q, expected), 1e-9);

        const auto full = hamiltonian_flow(j_field(r), p, r, 2.0 * std::numbers::pi, 1e-3);
        EXPECT_LT(testutil::max_abs_diff(full, p), 1e-6);
    }
}

TEST(HamiltonianFlow, ConservesEnergyAndSphereConstraint) {
    const SymplecticWeight r(1.0);
    const auto f = CouplingFunction::parse("0.2*z1^2*z2");
    const auto h = h_field(f);
    for (const auto& p0 : testutil::random_points(2, 5)) {
        const auto p = hamiltonian_flow(h, p0, r, 10.0, 1e-3);
        EXPECT_LT(std::abs(eval_H(f, p) - eval_H(f, p0)), 1e-6);
        EXPECT_LT(std::abs(eval_J(r, p) - eval_J(r, p0)), 1e-6);
        EXPECT_LT(sphere_residual(p.p1), 1e-9);
        EXPECT_LT(sphere_residual(p.p2), 1e-9);
    }
}

TEST(Psi, SwapsPolesAndIsAnInvolution) {
    const ProductPoint ns{SpherePoint::north(), SpherePoint::south()};
    const auto img = psi(ns);
    EXPECT_EQ(img.p1.z(), -1.0);
    EXPECT_EQ(img.p2.z(), 1.0);
    for (const auto& p : testutil::random_points(1000, 3)) {
        ASSERT_EQ(psi(psi(p)), p);
        for (double rv : {0.5, 1.0, 2.0}) {
            const SymplecticWeight r(rv);
            ASSERT_EQ(eval_J(r, psi(p)), -eval_J(r, p));
        }
    }
}
