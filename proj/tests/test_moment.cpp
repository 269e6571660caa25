#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "camlab/moment.hpp"
#include "test_util.hpp"

using namespace camlab;

namespace {
const ProductPoint kNS{SpherePoint::north(), SpherePoint::south()};
const ProductPoint kNN{SpherePoint::north(), SpherePoint::north()};
const ProductPoint kSN{SpherePoint::south(), SpherePoint::north()};
}  // namespace

TEST(Polynomial, ParsesAndEvaluates) {
    const auto p = Polynomial2::parse("0.2*z1*z2 - 0.1*z1^2*z2 + 0.5 + z2^3");
    EXPECT_DOUBLE_EQ(p(0.5, -2.0), 0.2 * 0.5 * -2.0 - 0.1 * 0.25 * -2.0 + 0.5 - 8.0);
    EXPECT_EQ(p.degree(), 3);
    EXPECT_TRUE(Polynomial2::parse("0").is_zero());
    EXPECT_DOUBLE_EQ(Polynomial2::parse("-z1 z2")(2.0, 3.0), -6.0);
    EXPECT_DOUBLE_EQ(Polynomial2::parse("1e-1*z1 + 2.5e0")(1.0, 0.0), 2.6);
    EXPECT_DOUBLE_EQ(Polynomial2::parse("z1*z1*z2")(2.0, 3.0), 12.0);
}

TEST(Polynomial, RejectsMalformedSpecs) {
    for (const char* bad : {"", "z3", "0.2*", "z1^", "0.2 + + z1", "z1 ** z2", "x1"})
        EXPECT_THROW(Polynomial2::parse(bad), DomainError) << bad;
}

TEST(Polynomial, CanonicalTextRoundTrips) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_int_distribution<int> pw(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Monomial> terms;
        for (int k = 0; k < 4; ++k) terms.push_back({coef(rng), pw(rng), pw(rng)});
        const Polynomial2 p(terms);
        const auto q = Polynomial2::parse(p.to_string());
        for (double a : {-1.0, -0.3, 0.7})
            for (double b : {-0.9, 0.2, 1.0}) ASSERT_DOUBLE_EQ(p(a, b), q(a, b)) << p.to_string();
    }
}

TEST(Coupling, CertificateBoundsTheGridMaximum) {
    const auto f = CouplingFunction::parse("0.2*z1*z2");
    EXPECT_DOUBLE_EQ(f.linf().grid_max, 0.2);
    EXPECT_GE(f.linf().bound, 0.2);
    EXPECT_LT(f.linf().bound, 0.2 + 1e-3);
    EXPECT_LE(f.linf().grid_step, 1e-3);

    // Maximum at an off-grid point; the allowance must cover the gap.
    const double peak = 0.1234567;
    const auto bump = CouplingFunction::black_box(
        "peak", [peak](double a, double b) { return 1.0 / (1.0 + 1e4 * ((a - peak) * (a - peak) + (b - peak) * (b - peak))); });
    EXPECT_GE(bump.linf().bound, 1.0);
    EXPECT_LT(bump.linf().grid_max, 1.0);
    EXPECT_FALSE(bump.defined_off_square());
    EXPECT_THROW(CouplingFunction::black_box("coarse", [](double, double) { return 0.0; }, 0.01), DomainError);
}

TEST(EvalJ, Examples) {
    EXPECT_EQ(eval_J(SymplecticWeight(1.0), kNS), 0.0);
    EXPECT_EQ(eval_J(SymplecticWeight(1.0), kNN), 2.0);
    EXPECT_EQ(eval_J(SymplecticWeight(2.0), kSN), 1.0);
}

TEST(EvalH, Examples) {
    EXPECT_EQ(eval_H(CouplingFunction(), kNS), -1.0);
    for (const auto& p : testutil::random_points(100)) EXPECT_NEAR(eval_H(CouplingFunction(), ProductPoint{p.p1, p.p1}), 1.0, 1e-15);
}

TEST(EvalH, SFamilyAgreesWithDirectFormula) {
    const auto pts = testutil::random_points(10000, 99);
    for (int k = 0; k <= 20; ++k) {
        const double s = k / 20.0;
        const auto f = CouplingFunction::s_family(s);
        for (const auto& p : pts) ASSERT_NEAR(eval_H(f, p), eval_Hs(s, p), 1e-15) << "s=" << s;
    }
}

TEST(EvalH, CouplingPerturbationIsBoundedByCertificate) {
    const auto f = CouplingFunction::parse("0.2*z1^2*z2 - 0.03*z1");
    for (const auto& p : testutil::random_points(5000, 4))
        ASSERT_LE(std::abs(eval_Hs(1.0, p) - eval_H(f, p)), f.linf().bound);
}

TEST(FiberSample, AntidiagonalAtMinusOne) {
    const auto fs = fiber_sample(1.0, -1.0, 64, 16);
    EXPECT_LT(fs.residual, 1e-12);
    for (const auto& p : fs.points) {
        ASSERT_NEAR(p.p2.x(), -p.p1.x(), 1e-12);
        ASSERT_NEAR(p.p2.y(), -p.p1.y(), 1e-12);
        ASSERT_NEAR(p.p2.z(), -p.p1.z(), 1e-12);
    }
}

TEST(FiberSample, LiftHitsTheLevel) {
    const auto fs = fiber_sample(0.5, -0.5, 64, 16);
    EXPECT_EQ(fs.points.size(), 64u * 16u + 2u);
    for (const auto& p : fs.points) {
        ASSERT_NEAR(eval_Hs(0.5, p), -0.5, 1e-10);
        ASSERT_NEAR(p.p1.z() + p.p2.z(), 0.0, 1e-10);
    }
}

// b = 0: the reduced curve is z^2 = cos(theta) / (cos(theta) + s).
TEST(FiberSample, ZeroLevelLiesOverTheZeroCurve) {
    for (double s : {0.2, 0.6, 1.0}) {
        const auto fs = fiber_sample(s, 0.0, 50, 7);
        for (const auto& p : fs.points) {
            const auto q = reduce(p);
            const double c = std::cos(q.theta());
            ASSERT_NEAR(q.z() * q.z(), c / (c + s), 1e-10);
        }
    }
}

TEST(FiberSample, RejectsLevelsOutsideWindow) {
    EXPECT_THROW(fiber_sample(0.5, -0.6, 10, 4), DomainError);
    EXPECT_THROW(fiber_sample(0.5, 0.1, 10, 4), DomainError);
    try {
        fiber_sample(0.5, 0.1, 10, 4);
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("window"), std::string::npos);
    }
}

TEST(ClassifyFiber, ThreeStandardCases) {
    EXPECT_EQ(classify_fiber(1.0, -1.0).topology, FiberTopology::Sphere);
    EXPECT_EQ(classify_fiber(0.5, -0.5).topology, FiberTopology::DoublyPinchedTorus);
    EXPECT_EQ(classify_fiber(1.0, -0.5).topology, FiberTopology::Torus);
    EXPECT_EQ(classify_fiber(0.0, 0.0).topology, FiberTopology::DoublyPinchedTorus);
    EXPECT_EQ(classify_fiber(0.5, 0.2).topology, FiberTopology::Empty);
    EXPECT_EQ(classify_fiber(0.5, -0.7).topology, FiberTopology::Empty);
}

TEST(ClassifyFiber, ConsistentWithSamples) {
    double torus_max_z = 0.0;
    for (const auto& p : fiber_sample(0.5, -0.3, 200, 1).points) torus_max_z = std::max(torus_max_z, std::abs(p.p1.z()));
    EXPECT_LT(torus_max_z, 0.95);  // bounded away from the poles

    double pinched_max_z = 0.0;
    for (const auto& q : pinched_set(0.5, 2000).points) pinched_max_z = std::max(pinched_max_z, std::abs(q.z()));
    EXPECT_GT(pinched_max_z, 0.998);
}

TEST(MomentImage, Bounds) {
    const MomentSystem coupled{SymplecticWeight(1.0), CouplingFunction::parse("z1*z2")};
    const auto img = moment_image(coupled, 4000);
    EXPECT_GE(img.a_min, -2.0);
    EXPECT_LE(img.a_max, 2.0);

    // With f = 0, H = <p1, p2> ranges over [-1, 1]; the sampled range fills it.
    const MomentSystem free{SymplecticWeight(1.0), CouplingFunction()};
    double previous_gap = 10.0;
    for (int n : {100, 1000, 20000}) {
        const auto im = moment_image(free, n);
        EXPECT_GE(im.b_min, -1.0 - 1e-15);
        EXPECT_LE(im.b_max, 1.0 + 1e-15);
        const double gap = (1.0 + im.b_min) + (1.0 - im.b_max);
        EXPECT_LE(gap, previous_gap);
        previous_gap = gap;
    }
    EXPECT_LT(previous_gap, 0.05);
    EXPECT_THROW(moment_image(free, 0), DomainError);
}

TEST(MomentImage, DeterministicForFixedN) {
    const MomentSystem sys{SymplecticWeight(2.0), CouplingFunction::parse("0.1*z1^2")};
    const auto a = moment_image(sys, 500);
    const auto b = moment_image(sys, 500);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        ASSERT_EQ(a.values[i].a, b.values[i].a);
        ASSERT_EQ(a.values[i].b, b.values[i].b);
    }
}
