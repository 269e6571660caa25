#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "camlab/quasi_state.hpp"

using namespace camlab;

namespace {

const Point kY1{0.0, -1.0};
const Point kY2{0.0, -0.5};

QuasiState two_point() { return QuasiState::averaged(kY1, kY2); }

MomentSystem h1_system() { return {SymplecticWeight{1.0}, CouplingFunction::s_family(1.0)}; }

std::vector<Point> image_samples(const MomentSystem& sys, int n) {
    std::vector<Point> out;
    for (const auto& v : moment_image(sys, n).values) out.push_back({v.a, v.b});
    return out;
}

std::vector<Pullback> pullbacks(const MomentSystem& sys, const std::vector<Profile>& profiles) {
    std::vector<Pullback> out;
    for (const auto& p : profiles) out.push_back({base_tag(sys), sys, p});
    return out;
}

std::vector<Pullback> standard_family(std::size_t n = 200) {
    const auto sys = h1_system();
    return pullbacks(sys, generate_family(2, n, kDefaultSeed, {-2.0, -1.0}, {2.0, 1.0}));
}

}  // namespace

TEST(Zeta, Examples) {
    const auto z = two_point();
    EXPECT_DOUBLE_EQ(zeta_eval(z, Profile::constant(0.7)), 0.7);
    const auto g = Profile::bump(Region::point(kY1), 0.25);
    EXPECT_DOUBLE_EQ(g(kY1), 1.0);
    EXPECT_DOUBLE_EQ(g(kY2), 0.0);
    EXPECT_DOUBLE_EQ(zeta_eval(z, g), 0.5);
    for (const auto& h : standard_family(20)) EXPECT_NEAR(zeta_eval(z, 2.0 * h.profile), 2.0 * zeta_eval(z, h), 1e-12);
}

TEST(Zeta, ConstructorRejectsCoincidentSupports) {
    EXPECT_THROW(QuasiState::averaged(kY1, kY1), DomainError);
    EXPECT_THROW(QuasiState::averaged({1.0}, {1.0, 2.0}), DomainError);
}

TEST(Zeta, AverageOfTwoStates) {
    const Point u1{0.1, 0.2}, u2{-0.3, 0.4}, v1{0.5, -0.6}, v2{0.0, 0.9};
    const auto avg = average(QuasiState::averaged(u1, u2), QuasiState::averaged(v1, v2));
    for (const auto& h : standard_family(40)) {
        const auto& f = h.profile;
        EXPECT_NEAR(avg(f), 0.25 * (f(u1) + f(u2) + f(v1) + f(v2)), 1e-14);
    }
}

TEST(Axioms, TwoPointStatePassesOnGeneratedFamily) {
    const auto rep = axiom_suite(two_point(), standard_family(), image_samples(h1_system(), 2000));
    EXPECT_TRUE(rep.all_passed());
    for (const char* a : {"normalization", "stability", "semi_homogeneity", "quasi_subadditivity"}) {
        EXPECT_LT(rep.at(a).worst, 1e-9) << a;
        EXPECT_GT(rep.at(a).checks, 0u) << a;
    }
    EXPECT_TRUE(rep.at("vanishing").skipped);
    EXPECT_FALSE(rep.at("hamiltonian_invariance").skipped);
    EXPECT_TRUE(rep.rejected.empty());
}

TEST(Axioms, AverageOfPassingStatesPasses) {
    const auto image = image_samples(h1_system(), 2000);
    const auto a = two_point();
    const auto b = QuasiState::averaged({0.5, 0.1}, {-0.5, 0.1});
    const auto fam = standard_family();
    ASSERT_TRUE(axiom_suite(a, fam, image).all_passed());
    ASSERT_TRUE(axiom_suite(b, fam, image).all_passed());
    EXPECT_TRUE(axiom_suite(average(a, b), fam, image).all_passed());
    const auto opaque = QuasiState::functional("avg-opaque", 2, [a, b](const Profile& h) { return 0.5 * (a(h) + b(h)); });
    EXPECT_TRUE(axiom_suite(opaque, fam, image).all_passed());
}

// Each broken functional violates a specific axiom:
//   max H + 1       normalization (zeta(a) = a + 1)
//   min H           quasi-subadditivity (min(f+g) >= min f + min g, strict when minima separate)
//   2H(y1) - H(y2)  stability (the difference can exceed max(H1 - H2))
//   H(y1)^2         semi-homogeneity (zeta(2H) = 4 zeta(H))
TEST(Axioms, BrokenFunctionalsAreFlagged) {
    const auto image = image_samples(h1_system(), 2000);
    const auto fam = standard_family();
    auto extreme = [image](const Profile& h, bool take_max) {
        double v = take_max ? -INFINITY : INFINITY;
        for (const auto& y : image) v = take_max ? std::max(v, h(y)) : std::min(v, h(y));
        return v;
    };

    const auto shifted_max = QuasiState::functional("max+1", 2, [&](const Profile& h) { return extreme(h, true) + 1.0; });
    auto rep = axiom_suite(shifted_max, fam, image);
    EXPECT_FALSE(rep.at("normalization").passed);

    const auto min_state = QuasiState::functional("min", 2, [&](const Profile& h) { return extreme(h, false); });
    rep = axiom_suite(min_state, fam, image);
    EXPECT_TRUE(rep.at("normalization").passed);
    EXPECT_TRUE(rep.at("stability").passed);
    EXPECT_TRUE(rep.at("semi_homogeneity").passed);
    EXPECT_FALSE(rep.at("quasi_subadditivity").passed);

    const auto lopsided = QuasiState::functional("2y1-y2", 2, [](const Profile& h) { return 2.0 * h(kY1) - h(kY2); });
    rep = axiom_suite(lopsided, fam, image);
    EXPECT_TRUE(rep.at("normalization").passed);
    EXPECT_FALSE(rep.at("stability").passed);

    const auto squared = QuasiState::functional("sq", 2, [](const Profile& h) { return h(kY1) * h(kY1); });
    rep = axiom_suite(squared, fam, image);
    EXPECT_FALSE(rep.at("semi_homogeneity").passed);
}

TEST(Axioms, NonCommutingPairsAreRejected) {
    const SymplecticWeight one{1.0};
    const MomentSystem a{one, CouplingFunction{}};
    const MomentSystem b{one, CouplingFunction::parse("0.5*z1^2")};
    const auto height = Profile::polynomial(2, {{1.0, {1, 0}}});
    const auto energy = Profile::polynomial(2, {{1.0, {0, 1}}});
    // J with J commutes across systems; H_0 with H_{0.5 z1^2} does not.
    const std::vector<Pullback> fam{{base_tag(a), a, height}, {base_tag(b), b, height}, {base_tag(a), a, energy},
                                    {base_tag(b), b, energy}};
    const auto rep = axiom_suite(two_point(), fam, image_samples(a, 200));
    ASSERT_FALSE(rep.rejected.empty());
    for (const auto& r : rep.rejected) {
        EXPECT_GT(r.bracket, 1e-3);
        EXPECT_NE(r.i, 0u);  // the J/J pair is admitted
    }
}

TEST(Axioms, VanishingOnPsiDisplacedSupports) {
    const auto image = image_samples(h1_system(), 500);
    AxiomOptions opt;
    opt.displaceable_supports = psi_displaced_bumps({{0.6, 0.0}, {-0.8, -0.3}, {1.2, 0.4}}, 0.1);
    EXPECT_TRUE(axiom_suite(two_point(), standard_family(40), image, opt).at("vanishing").passed);
    // A state charging a fiber off the J = 0 slice violates vanishing.
    const auto off = QuasiState::averaged({0.6, 0.0}, kY1);
    EXPECT_FALSE(axiom_suite(off, standard_family(40), image, opt).at("vanishing").passed);
    EXPECT_THROW(psi_displaced_bumps({{0.1, 0.0}}, 0.1), DomainError);
}

TEST(Zeta, MonotoneOnOrderedPairs) {
    const auto z = two_point();
    const auto fam = standard_family(100);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto g = fam[i].profile + Profile::bump(Region::point({0.1 * i - 1.0, -0.7}), 0.3);
        EXPECT_LE(z(fam[i].profile), z(g) + 1e-9);
    }
}

TEST(Tau, SupportCounting) {
    const auto z = two_point();
    EXPECT_NEAR(tau(z, Region::point(kY1)).value, 0.5, 1e-6);
    EXPECT_NEAR(tau(z, Region::points({kY1, kY2})).value, 1.0, 1e-6);
    EXPECT_NEAR(tau(z, Region::point({0.3, 0.3})).value, 0.0, 1e-6);
    EXPECT_NEAR(tau(z, Region::box({-2.0, -1.0}, {2.0, 1.0})).value, 1.0, 1e-12);
    const auto single = tau(z, Region::point(kY1));
    EXPECT_NEAR(z(single.realizing), 0.5, 1e-9);
    EXPECT_NEAR(single.brute_force, 0.5, 1e-6);
    EXPECT_EQ(single.family_size, 1000u);
}

TEST(Tau, OpaqueStateUsesBruteForce) {
    const auto a = two_point();
    const auto opaque = QuasiState::functional("opaque", 2, [a](const Profile& h) { return a(h); });
    const auto t = tau(opaque, Region::point(kY2));
    EXPECT_FALSE(t.analytic);
    EXPECT_NEAR(t.value, 0.5, 1e-6);
}

TEST(Tau, MonotoneUnderInclusion) {
    const auto z = two_point();
    const std::vector<Region> chain{Region::point({0.0, -0.75}), Region::box({-0.1, -0.8}, {0.1, -0.7}),
                                    Region::box({-0.1, -1.0}, {0.1, -0.7}), Region::box({-0.1, -1.0}, {0.1, -0.5}),
                                    Region::box({-2.0, -1.0}, {2.0, 1.0})};
    double prev = 0.0;
    for (const auto& K : chain) {
        const double t = tau(z, K).value;
        EXPECT_GE(t, prev - 1e-12);
        prev = t;
    }
    EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(Tau, ClosedNeighborhoodsOfASupportPointArePositive) {
    const auto z = two_point();
    for (int j = 0; j <= 20; ++j) {
        const double r = std::ldexp(1.0, -j);
        EXPECT_GE(tau(z, Region::box({kY1[0] - r, kY1[1] - r}, {kY1[0] + r, kY1[1] + r})).value, 0.5 - 1e-12);
    }
}

TEST(Tau, DimensionMismatch) { EXPECT_THROW(tau(two_point(), Region::point({0.0})), DomainError); }

TEST(Region, ParseAndRoundTrip) {
    const auto r = Region::parse("point:0,-1; ball:0.5,0.5:0.25;box:-1,-1:0,0");
    EXPECT_EQ(r.shapes().size(), 3u);
    EXPECT_EQ(r.dim(), 2u);
    EXPECT_TRUE(r.contains({0.0, -1.0}));
    EXPECT_TRUE(r.contains({0.5, 0.7}));
    EXPECT_TRUE(r.contains({-0.5, -0.5}));
    EXPECT_FALSE(r.contains({0.9, -0.9}));
    EXPECT_NEAR(r.dist({1.0, 0.5}), 0.25, 1e-15);
    EXPECT_EQ(Region::parse(r.to_string()).to_string(), r.to_string());
    for (const char* bad : {"", "pt:0,0", "point:0,0,0", "box:1,1:0,0", "ball:0,0:-1", "point:0;point:0,1", "point:x"})
        EXPECT_THROW(Region::parse(bad), DomainError) << bad;
}

TEST(Profile, JsonRoundTrip) {
    const std::vector<OpenBox> cover{{{-1.0, -1.0}, {0.5, 1.0}}, {{0.0, -1.0}, {1.0, 1.0}}};
    const Profile p = Profile::polynomial(2, {{0.5, {2, 1}}, {-1.0, {0, 0}}}) +
                      3.0 * (Profile::bump(Region::parse("box:0,0:0.2,0.1"), 0.3) *
                             Profile::partition_element(cover, 1));
    const auto j = p.describe();
    const Profile q = Profile::from_json(nlohmann::ordered_json::parse(j.dump()));
    EXPECT_EQ(q.describe().dump(), j.dump());
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Point y{u(rng), u(rng)};
        EXPECT_EQ(p(y), q(y));
    }
}

TEST(Profile, BumpIsExactlyOneOnPlateauAndInUnitRange) {
    const auto b = Profile::bump(Region::ball({0.0, 0.0}, 0.3), 0.2);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const Point y{u(rng), u(rng)};
        const double v = b(y);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        const double r = std::hypot(y[0], y[1]);
        if (r <= 0.3) {
            EXPECT_EQ(v, 1.0);
        }
        if (r >= 0.5) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST(Heaviness, UnionOfSupportsIsSuperheavy) {
    const auto rep = heaviness_report(two_point(), Region::points({kY1, kY2}));
    EXPECT_TRUE(rep.heavy.holds);
    EXPECT_TRUE(rep.superheavy.holds);
    EXPECT_EQ(rep.heavy.evidence, "class-restricted");
    EXPECT_TRUE(rep.pseudoheavy.holds);
    EXPECT_EQ(rep.pseudoheavy.witness_values.size(), 21u);
    EXPECT_EQ(rep.class_note, "relative to pullback class");
}

TEST(Heaviness, SingleSupportIsPseudoheavyButNotHeavy) {
    const auto rep = heaviness_report(two_point(), Region::point(kY1));
    EXPECT_TRUE(rep.pseudoheavy.holds);
    for (double v : rep.pseudoheavy.witness_values) EXPECT_GE(v, 0.5);
    EXPECT_EQ(rep.pseudoheavy.witness_values.back(), 0.5);
    ASSERT_FALSE(rep.heavy.holds);
    ASSERT_TRUE(rep.heavy.profile);
    EXPECT_DOUBLE_EQ(rep.heavy.zeta, 0.5);
    EXPECT_DOUBLE_EQ(rep.heavy.bound, 1.0);
    EXPECT_DOUBLE_EQ((*rep.heavy.profile)(kY1), 1.0);
    EXPECT_DOUBLE_EQ((*rep.heavy.profile)(kY2), 0.0);
    EXPECT_FALSE(rep.superheavy.holds);
}

TEST(Heaviness, OffSupportPointFailsPseudoheavyAtItsDistance) {
    const Point y{0.0, -0.8};  // distance 0.2 from y1, 0.3 from y2
    const auto rep = heaviness_report(two_point(), Region::point(y));
    EXPECT_FALSE(rep.pseudoheavy.holds);
    EXPECT_LT(std::ldexp(1.0, -rep.pseudoheavy.failed_at), 0.2);
    EXPECT_GE(std::ldexp(1.0, -(rep.pseudoheavy.failed_at - 1)), 0.2);
    EXPECT_FALSE(rep.heavy.holds);
}

TEST(Heaviness, NeighborhoodsOfTheUnionPassTheHeavyTest) {
    const auto z = two_point();
    for (int j = 0; j <= 20; ++j) {
        const double r = std::ldexp(1.0, -j);
        const Region U({Shape{Shape::Kind::Box, {kY1[0] - r, kY1[1] - r}, {kY1[0] + r, kY1[1] + r}},
                        Shape{Shape::Kind::Box, {kY2[0] - r, kY2[1] - r}, {kY2[0] + r, kY2[1] + r}}});
        EXPECT_TRUE(heaviness_report(z, U).heavy.holds) << j;
    }
    EXPECT_TRUE(heaviness_report(z, Region::points({kY1, kY2})).heavy.holds);
}

TEST(Simplicity, TwoPointStateIsNotSimple) {
    const auto rep = simplicity_scan(two_point(), {Region::point(kY1), Region::point(kY2),
                                                   Region::points({kY1, kY2}), Region::point({0.4, 0.4})});
    EXPECT_FALSE(rep.simple);
    ASSERT_EQ(rep.violators.size(), 2u);
    EXPECT_EQ(rep.violators[0], 0u);
    EXPECT_EQ(rep.violators[1], 1u);
    EXPECT_TRUE(rep.lemma_consistent);
}

TEST(Simplicity, DiracStateIsSimple) {
    const auto rep = simplicity_scan(QuasiState::dirac(kY1),
                                     {Region::point(kY1), Region::point(kY2), Region::box({-1.0, -1.0}, {1.0, 0.0})});
    EXPECT_TRUE(rep.simple);
    EXPECT_TRUE(rep.lemma_consistent);
}

namespace {

std::vector<Point> unit_grid(int per_side) {
    std::vector<Point> g;
    for (int i = 0; i < per_side; ++i)
        for (int j = 0; j < per_side; ++j)
            g.push_back({-1.0 + 2.0 * (i + 0.5) / per_side, -1.0 + 2.0 * (j + 0.5) / per_side});
    return g;
}

// Four overlapping boxes covering [-1,1]^2 except a neighborhood of (0, 0).
std::vector<CoverElement> ring_cover(CoverCertification c) {
    return {{{{-1.1, -1.1}, {-0.05, 1.1}}, c},
            {{{0.05, -1.1}, {1.1, 1.1}}, c},
            {{{-1.1, -1.1}, {1.1, -0.05}}, c},
            {{{-1.1, 0.05}, {1.1, 1.1}}, c}};
}

// H = 0 on the closed ball B(0, 0.1), -1 outside B(0, 0.2); with `bump_up`
// it is pushed positive around (0.5, 0.5).
Profile stem_profile(bool bump_up) {
    Profile h = Profile::bump(Region::ball({0.0, 0.0}, 0.1), 0.1) - Profile::constant(1.0);
    if (bump_up) h = h + 3.0 * Profile::bump(Region::point({0.5, 0.5}), 0.1);
    return h;
}

}  // namespace

TEST(Nph, SingleSupportCertificate) {
    NphInput in{unit_grid(100), {0.0, 0.0}, 0.1, stem_profile(false), ring_cover(CoverCertification::Checked)};
    const auto cert = nph_stem_certificate(QuasiState::dirac({0.0, 0.0}), in);
    ASSERT_TRUE(cert.issued) << cert.refusal;
    EXPECT_LE(cert.partition_residual, 1e-12);
    EXPECT_GE(cert.checked_points, 9000u);
    for (double t : cert.terms) EXPECT_LE(t, 0.0);
    EXPECT_LE(cert.zeta_H, 0.0);
    EXPECT_FALSE(cert.ledger.empty());
}

TEST(Nph, PartitionOfUnitySumsToOne) {
    const auto cover = ring_cover(CoverCertification::Asserted);
    std::vector<OpenBox> boxes;
    for (const auto& c : cover) boxes.push_back(c.box);
    double worst = 0.0;
    for (const auto& y : unit_grid(100)) {
        if (std::hypot(y[0], y[1]) < 0.1) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < boxes.size(); ++i) s += Profile::partition_element(boxes, i)(y);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(Nph, RefusesOnCoverGap) {
    auto cover = ring_cover(CoverCertification::Asserted);
    cover.pop_back();  // the strip y > 0.05 is now uncovered
    NphInput in{unit_grid(50), {0.0, 0.0}, 0.1, stem_profile(false), cover};
    const auto cert = nph_stem_certificate(QuasiState::dirac({0.0, 0.0}), in);
    EXPECT_FALSE(cert.issued);
    EXPECT_NE(cert.refusal.find("cover gap"), std::string::npos);
}

TEST(Nph, RefusesOnPositiveTerm) {
    // The second support point sits in an asserted cover element where H > 0.
    const auto z = QuasiState::averaged({0.0, 0.0}, {0.5, 0.5});
    NphInput in{unit_grid(50), {0.0, 0.0}, 0.1, stem_profile(true), ring_cover(CoverCertification::Asserted)};
    const auto cert = nph_stem_certificate(z, in);
    EXPECT_FALSE(cert.issued);
    EXPECT_NE(cert.refusal.find("term"), std::string::npos);
    EXPECT_NE(cert.refusal.find("positive"), std::string::npos);
}

TEST(Nph, RefusesWhenACheckedElementHoldsAPseudoheavyFiber) {
    const auto z = QuasiState::averaged({0.0, 0.0}, {0.5, 0.5});
    NphInput in{unit_grid(50), {0.0, 0.0}, 0.1, stem_profile(false), ring_cover(CoverCertification::Checked)};
    const auto cert = nph_stem_certificate(z, in);
    EXPECT_FALSE(cert.issued);
    EXPECT_NE(cert.refusal.find("pseudoheavy"), std::string::npos);
}

TEST(Nph, RefusesWhenHDoesNotVanishOnV) {
    NphInput in{unit_grid(50), {0.0, 0.0}, 0.1, Profile::constant(-1.0), ring_cover(CoverCertification::Checked)};
    EXPECT_FALSE(nph_stem_certificate(QuasiState::dirac({0.0, 0.0}), in).issued);
}

TEST(Genus2, PresetTags) {
    const Genus2Preset preset;
    const auto z = genus2_instance(preset.c3, preset.c4);
    const auto both = heaviness_report(z, Region::points({{preset.c3}, {preset.c4}}));
    EXPECT_TRUE(both.superheavy.holds);
    EXPECT_TRUE(both.heavy.holds);
    for (double c : {preset.c3, preset.c4}) {
        const auto one = heaviness_report(z, Region::point({c}));
        EXPECT_TRUE(one.pseudoheavy.holds);
        EXPECT_FALSE(one.heavy.holds);
        EXPECT_NEAR(tau(z, Region::point({c})).value, 0.5, 1e-6);
    }
    // No level of F_P is heavy.
    for (double c : {0.5, 1.0, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0})
        EXPECT_FALSE(heaviness_report(z, Region::point({c})).heavy.holds) << c;
    EXPECT_THROW(genus2_instance(3.0, 3.0), DomainError);
    EXPECT_THROW(genus2_instance(4.0, 3.0), DomainError);
}
