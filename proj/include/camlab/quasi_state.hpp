#pragma once

// Partial quasi-states restricted to pullbacks f o Phi of a moment map.
//
// On the pullback class a state is just a functional on profiles f. The
// states built here are finite averages of point evaluations,
// zeta(f o Phi) = sum_i w_i f(y_i), which covers the two-point state
// (y1 + y2)/2, its averages, and single-point (Dirac) states. Opaque
// functionals are accepted too, mainly to exercise the axiom checks.
//
// Heaviness over all of C(M) is not searchable. Positive heavy/superheavy
// tags are evidence on the generated test class only; counterexamples and
// pseudoheavy witnesses are genuine.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "camlab/errors.hpp"
#include "camlab/moment.hpp"
#include "camlab/profile.hpp"
#include "camlab/sphere.hpp"

namespace camlab {

struct Atom {
    double weight = 0.0;
    Point y;
};

class QuasiState {
public:
    using Functional = std::function<double(const Profile&)>;

    /// zeta(f o Phi) = (f(y1) + f(y2)) / 2 with y1 != y2.
    static QuasiState averaged(Point y1, Point y2, std::string name = "averaged") {
        if (y1.empty() || y1.size() > 2 || y1.size() != y2.size())
            throw DomainError("averaged state: support points must share dimension 1 or 2");
        if (y1 == y2) throw DomainError("averaged state: support points must differ (y1 = y2 = " + detail::fmt_point(y1) + ")");
        return atomic(std::move(name), {{0.5, std::move(y1)}, {0.5, std::move(y2)}});
    }

    static QuasiState dirac(Point y, std::string name = "dirac") {
        if (y.empty() || y.size() > 2) throw DomainError("dirac state: support point must have dimension 1 or 2");
        return atomic(std::move(name), {{1.0, std::move(y)}});
    }

    /// An arbitrary functional; no atom list, so tau falls back to brute force.
    static QuasiState functional(std::string name, std::size_t dim, Functional f) {
        QuasiState q;
        q.name_ = std::move(name);
        q.dim_ = dim;
        q.eval_ = std::move(f);
        return q;
    }

    double operator()(const Profile& h) const { return eval_(h); }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    bool is_atomic() const { return !atoms_.empty(); }
    const std::vector<Atom>& atoms() const { return atoms_; }

    friend QuasiState average(const QuasiState& a, const QuasiState& b);

private:
    static QuasiState atomic(std::string name, std::vector<Atom> atoms) {
        QuasiState q;
        q.name_ = std::move(name);
        q.dim_ = atoms.front().y.size();
        q.atoms_ = std::move(atoms);
        q.eval_ = [atoms = q.atoms_](const Profile& h) {
            double s = 0.0;
            for (const auto& a : atoms) s += a.weight * h(a.y);
            return s;
        };
        return q;
    }

    std::string name_;
    std::size_t dim_ = 0;
    std::vector<Atom> atoms_;
    Functional eval_;
};

/// The pointwise average (zeta1 + zeta2) / 2.
inline QuasiState average(const QuasiState& a, const QuasiState& b) {
    if (a.dim() != b.dim()) throw DomainError("average: states live on different moment spaces");
    const std::string name = "avg(" + a.name() + "," + b.name() + ")";
    if (a.is_atomic() && b.is_atomic()) {
        std::vector<Atom> atoms;
        for (const auto& x : a.atoms()) atoms.push_back({0.5 * x.weight, x.y});
        for (const auto& x : b.atoms()) atoms.push_back({0.5 * x.weight, x.y});
        return QuasiState::atomic(name, std::move(atoms));
    }
    return QuasiState::functional(name, a.dim(), [a, b](const Profile& h) { return 0.5 * (a(h) + b(h)); });
}

/// A profile together with the moment map it is pulled back by.
struct Pullback {
    std::string base;                   // e.g. "Phi[R=1,f=0.2*z1*z2]" or "F_P"
    std::optional<MomentSystem> system; // set when Phi = (J_R, H_f) is available
    Profile profile;
};

inline std::string base_tag(const MomentSystem& sys) {
    return "Phi[R=" + detail::fmt_num(sys.R.value()) + ",f=" + sys.f.name() + "]";
}

inline double zeta_eval(const QuasiState& zeta, const Profile& h) { return zeta(h); }
inline double zeta_eval(const QuasiState& zeta, const Pullback& h) { return zeta(h.profile); }

// ---------------------------------------------------------------------------
// Axiom harness

struct AxiomResult {
    std::string axiom;
    bool passed = true;
    bool skipped = false;
    double worst = 0.0;
    std::size_t checks = 0;
    std::string detail;
};

struct RejectedPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double bracket = 0.0;  // NaN when the bracket could not be formed
    std::string reason;
};

struct AxiomReport {
    std::string state;
    std::vector<AxiomResult> axioms;
    std::vector<RejectedPair> rejected;

    bool all_passed() const {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
    }
    const AxiomResult& at(const std::string& name) const {
        for (const auto& a : axioms)
            if (a.axiom == name) return a;
        throw DomainError("axiom report has no entry '" + name + "'");
    }
    std::vector<std::string> failed() const {
        std::vector<std::string> out;
        for (const auto& a : axioms)
            if (!a.passed) out.push_back(a.axiom);
        return out;
    }
};

struct AxiomOptions {
    double tolerance = 1e-9;            // normalization, homogeneity, subadditivity
    double stability_tolerance = 1e-6;  // sandwich, after sampling inflation
    double commute_tolerance = 1e-8;
    int bracket_points = 64;
    std::uint64_t seed = kDefaultSeed;
    /// Profiles whose pullback support is certified displaceable. Empty means
    /// the vanishing axiom is skipped.
    std::vector<Profile> displaceable_supports;
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> test_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
    for (std::size_t i = 0; i + 7 < n; i += 3) out.emplace_back(i, i + 7);
    return out;
}

// max |{f o Phi, g o Psi}| over random points; NaN if the pair cannot be formed.
inline double pullback_bracket(const Pullback& f, const Pullback& g, int points, std::uint64_t seed) {
    if (!f.system || !g.system || f.system->R.value() != g.system->R.value())
        return std::numeric_limits<double>::quiet_NaN();
    auto lift = [](const Pullback& p) {
        const double r = p.system->R.value();
        auto h = h_field(p.system->f);
        return [prof = p.profile, r, h](const Coords6& c) { return prof(Point{c[2] + r * c[5], h(c)}); };
    };
    const auto F = lift(f);
    const auto G = lift(g);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 0; k < points; ++k)
        worst = std::max(worst, std::abs(poisson_bracket(F, G, random_product_point(rng), f.system->R)));
    return worst;
}

}  // namespace detail

/// Checks the quasi-state axioms on `family`. `image` samples the moment
/// image and is used for the stability sandwich; atoms are added to it.
inline AxiomReport axiom_suite(const QuasiState& zeta, const std::vector<Pullback>& family,
                               const std::vector<Point>& image, const AxiomOptions& opt = {}) {
    AxiomReport rep;
    rep.state = zeta.name();
    std::vector<Point> samples = image;
    for (const auto& a : zeta.atoms()) samples.push_back(a.y);

    AxiomResult norm;
    norm.axiom = "normalization";
    for (double a : {-2.5, -1.0, 0.0, 0.5, 1.0, 3.75}) {
        norm.worst = std::max(norm.worst, std::abs(zeta(Profile::constant(a)) - a));
        ++norm.checks;
    }
    norm.passed = norm.worst <= opt.tolerance;
    norm.detail = "|zeta(a) - a| over constants";

    AxiomResult stab;
    stab.axiom = "stability";
    AxiomResult homog;
    homog.axiom = "semi_homogeneity";
    AxiomResult sub;
    sub.axiom = "quasi_subadditivity";
    stab.detail = "min(H1-H2) <= zeta(H1)-zeta(H2) <= max(H1-H2), extremes over the sampled image";
    homog.detail = "|zeta(sH) - s zeta(H)| for s in {0, 0.5, 2, 3.25}";
    sub.detail = "zeta(H1+H2) - zeta(H1) - zeta(H2) on commuting pairs";

    for (const auto& h : family) {
        const double z = zeta(h.profile);
        for (double s : {0.0, 0.5, 2.0, 3.25}) {
            homog.worst = std::max(homog.worst, std::abs(zeta(s * h.profile) - s * z));
            ++homog.checks;
        }
    }

    for (const auto& [i, j] : detail::test_pairs(family.size())) {
        const Profile& h1 = family[i].profile;
        const Profile& h2 = family[j].profile;
        const double z1 = zeta(h1);
        const double z2 = zeta(h2);

        double lo = INFINITY;
        double hi = -INFINITY;
        for (const auto& y : samples) {
            const double d = h1(y) - h2(y);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        stab.worst = std::max({stab.worst, lo - (z1 - z2), (z1 - z2) - hi});
        ++stab.checks;

        if (family[i].base != family[j].base) {
            const double br = detail::pullback_bracket(family[i], family[j], opt.bracket_points, opt.seed);
            if (!(br <= opt.commute_tolerance)) {
                rep.rejected.push_back({i, j, br,
                                        std::isnan(br) ? "no common Poisson structure to test commutation"
                                                       : "pullbacks do not Poisson-commute"});
                continue;
            }
        }
        sub.worst = std::max(sub.worst, zeta(h1 + h2) - z1 - z2);
        ++sub.checks;
    }
    stab.passed = stab.worst <= opt.stability_tolerance;
    homog.passed = homog.worst <= opt.tolerance;
    sub.passed = sub.worst <= opt.tolerance;

    AxiomResult inv;
    inv.axiom = "hamiltonian_invariance";
    inv.detail = "J_R-flow moves points inside their fibers, so f o Phi is unchanged; max |Phi(phi_t p) - Phi(p)|";
    std::mt19937_64 rng(opt.seed);
    for (const auto& h : family) {
        if (!h.system) continue;
        const auto& sys = *h.system;
        for (int k = 0; k < 2; ++k) {
            const auto p = random_product_point(rng);
            const auto q = hamiltonian_flow(j_field(sys.R), p, sys.R, 0.7, 0.01);
            const auto a = moment(sys, p);
            const auto b = moment(sys, q);
            inv.worst = std::max({inv.worst, std::abs(a.a - b.a), std::abs(a.b - b.b)});
            ++inv.checks;
        }
        if (inv.checks >= 20) break;
    }
    if (inv.checks == 0) {
        inv.skipped = true;
        inv.detail = "skipped: no family member carries a moment system to flow";
    }
    inv.passed = inv.worst <= 1e-6;

    AxiomResult van;
    van.axiom = "vanishing";
    if (opt.displaceable_supports.empty()) {
        van.skipped = true;
        van.detail = "skipped: no displaceability certificate supplied for any support";
    } else {
        for (const auto& h : opt.displaceable_supports) {
            van.worst = std::max(van.worst, std::abs(zeta(h)));
            ++van.checks;
        }
        van.passed = van.worst <= opt.tolerance;
        van.detail = "|zeta(H)| for H with displaceable support";
    }

    rep.axioms = {norm, stab, homog, sub, inv, van};
    return rep;
}

/// Bumps around moment values with |a| >= 2 delta, each supported where
/// J_R has one sign and |J_R| > delta. Since J_R o psi = -J_R, psi moves each
/// support off itself.
inline std::vector<Profile> psi_displaced_bumps(const std::vector<Point>& centres, double delta) {
    std::vector<Profile> out;
    for (const auto& c : centres) {
        if (c.size() != 2 || !(std::abs(c[0]) >= 2.0 * delta))
            throw DomainError("psi_displaced_bumps: centre must be 2-D with |a| >= 2 delta");
        out.push_back(Profile::bump(Region::point(c), 0.9 * (std::abs(c[0]) - delta)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-measure

struct QuasiMeasureValue {
    double value = 0.0;
    double eps = 0.0;             // width of the realizing bump
    Profile realizing;            // plateau on K, within 1e-9 of the infimum
    double brute_force = 0.0;     // inf over the sampled bump family
    std::size_t family_size = 0;
    bool analytic = false;
};

inline constexpr std::size_t kTauFamily = 1000;

/// tau(K) = inf{ zeta(a) : 0 <= a <= 1, a = 1 on K } over plateau bumps.
/// For atomic states this is the weight of the atoms inside K.
inline QuasiMeasureValue tau(const QuasiState& zeta, const Region& K) {
    if (K.dim() != zeta.dim())
        throw DomainError("tau: region dimension " + std::to_string(K.dim()) + " does not match the state (" +
                          std::to_string(zeta.dim()) + ")");
    QuasiMeasureValue out;
    out.family_size = kTauFamily;
    out.brute_force = INFINITY;
    double best_eps = 1.0;
    for (std::size_t k = 0; k < kTauFamily; ++k) {
        const double eps = std::pow(10.0, -9.0 * static_cast<double>(k) / (kTauFamily - 1));
        const double v = zeta(Profile::bump(K, eps));
        if (v < out.brute_force) out.brute_force = v, best_eps = eps;
    }

    if (zeta.is_atomic()) {
        out.analytic = true;
        for (const auto& a : zeta.atoms())
            if (K.contains(a.y)) out.value += a.weight;
        out.eps = 1.0;
        while (std::abs(zeta(Profile::bump(K, out.eps)) - out.value) > 1e-9 && out.eps > 1e-15) out.eps *= 0.5;
        if (std::abs(out.brute_force - out.value) > 1e-6)
            throw NumericError("tau: support count " + std::to_string(out.value) +
                               " disagrees with the bump-family infimum " + std::to_string(out.brute_force));
    } else {
        out.value = out.brute_force;
        out.eps = best_eps;
    }
    out.value = std::clamp(out.value, 0.0, 1.0);
    out.realizing = Profile::bump(K, out.eps);
    return out;
}

// ---------------------------------------------------------------------------
// Heaviness

struct TagResult {
    bool holds = false;
    std::string evidence;           // "class-restricted", "genuine counterexample", "genuine witness", ...
    std::optional<Profile> profile; // counterexample, or the smallest witness
    double zeta = 0.0;              // zeta of that profile
    double bound = 0.0;             // inf_K or sup_K of it (heavy/superheavy)
    std::size_t tested = 0;
    int failed_at = -1;             // pseudoheavy: first j with no witness at radius 2^-j
    std::vector<double> witness_values;
};

struct HeavinessReport {
    Region K;
    TagResult heavy;
    TagResult superheavy;
    TagResult pseudoheavy;
    std::string class_note = "relative to pullback class";
};

inline constexpr int kMaxRadiusExponent = 20;

namespace detail {

struct TestFunction {
    Profile f;
    double inf_K;
    double sup_K;
};

inline std::vector<TestFunction> heaviness_family(const QuasiState& zeta, const Region& K, std::uint64_t seed) {
    std::vector<TestFunction> out;
    // Narrowest bumps first, so a reported counterexample separates K from
    // everything else.
    for (int j = kMaxRadiusExponent; j >= 0; --j) {
        const Profile b = Profile::bump(K, std::ldexp(1.0, -j));
        out.push_back({b, 1.0, 1.0});
        out.push_back({Profile::constant(1.0) - b, 0.0, 0.0});
        out.push_back({-1.0 * b, -1.0, -1.0});
    }
    if (K.is_finite()) {
        const auto pts = K.finite_points();
        // Product of squared distances to K's points, zero on K.
        if (pts.size() <= 3) {
            Profile prod = Profile::constant(1.0);
            for (const auto& p : pts) {
                std::vector<PolyTerm> t;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    std::array<int, 2> e2{0, 0}, e1{0, 0};
                    e2[i] = 2;
                    e1[i] = 1;
                    t.push_back({1.0, e2});
                    t.push_back({-2.0 * p[i], e1});
                    t.push_back({p[i] * p[i], {0, 0}});
                }
                prod = prod * Profile::polynomial(p.size(), std::move(t));
            }
            out.push_back({prod, 0.0, 0.0});
            out.push_back({-1.0 * prod, 0.0, 0.0});
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> deg(1, 6);
        for (int k = 0; k < 200; ++k) {
            const Profile f = random_polynomial(zeta.dim(), deg(rng), rng);
            double lo = INFINITY, hi = -INFINITY;
            for (const auto& p : pts) lo = std::min(lo, f(p)), hi = std::max(hi, f(p));
            out.push_back({f, lo, hi});
        }
    }
    return out;
}

}  // namespace detail

inline constexpr double kHeavyTolerance = 1e-12;

/// For every j <= 20, a bump supported in the 2^-j neighborhood of K with
/// positive zeta.
inline TagResult pseudoheavy_test(const QuasiState& zeta, const Region& K) {
    TagResult t;
    t.evidence = "genuine witness";
    t.holds = true;
    for (int j = 0; j <= kMaxRadiusExponent; ++j) {
        const Profile b = Profile::bump(K, 0.999 * std::ldexp(1.0, -j));
        const double v = zeta(b);
        ++t.tested;
        t.witness_values.push_back(v);
        if (!(v > kHeavyTolerance)) {
            t.holds = false;
            t.failed_at = j;
            t.profile = b;
            t.zeta = v;
            t.evidence = zeta.is_atomic() ? "genuine: no support point within radius 2^-" + std::to_string(j)
                                          : "no witness in the bump family at radius 2^-" + std::to_string(j);
            return t;
        }
        t.profile = b;
        t.zeta = v;
    }
    return t;
}

inline HeavinessReport heaviness_report(const QuasiState& zeta, const Region& K, std::uint64_t seed = kDefaultSeed) {
    if (K.dim() != zeta.dim()) throw DomainError("heaviness_report: region dimension does not match the state");
    HeavinessReport rep;
    rep.K = K;
    rep.heavy.holds = rep.superheavy.holds = true;
    for (const auto& tf : detail::heaviness_family(zeta, K, seed)) {
        const double z = zeta(tf.f);
        ++rep.heavy.tested;
        ++rep.superheavy.tested;
        if (rep.heavy.holds && z < tf.inf_K - kHeavyTolerance) {
            rep.heavy.holds = false;
            rep.heavy.profile = tf.f;
            rep.heavy.zeta = z;
            rep.heavy.bound = tf.inf_K;
        }
        if (rep.superheavy.holds && z > tf.sup_K + kHeavyTolerance) {
            rep.superheavy.holds = false;
            rep.superheavy.profile = tf.f;
            rep.superheavy.zeta = z;
            rep.superheavy.bound = tf.sup_K;
        }
    }
    rep.heavy.evidence = rep.heavy.holds ? "class-restricted" : "genuine counterexample: zeta(G) < inf_K G";
    rep.superheavy.evidence = rep.superheavy.holds ? "class-restricted" : "genuine counterexample: zeta(G) > sup_K G";
    rep.pseudoheavy = pseudoheavy_test(zeta, K);
    return rep;
}

struct SimplicityEntry {
    Region K;
    double tau = 0.0;
    bool heavy = false;
    bool lemma_consistent = true;  // tau = 1 exactly when the heavy test passes
};

struct SimplicityReport {
    std::string state;
    std::vector<SimplicityEntry> entries;
    std::vector<std::size_t> violators;  // indices with tau outside {0, 1}
    bool simple = true;
    bool lemma_consistent = true;
};

inline SimplicityReport simplicity_scan(const QuasiState& zeta, const std::vector<Region>& Ks) {
    SimplicityReport rep;
    rep.state = zeta.name();
    for (std::size_t i = 0; i < Ks.size(); ++i) {
        SimplicityEntry e;
        e.K = Ks[i];
        e.tau = tau(zeta, Ks[i]).value;
        e.heavy = heaviness_report(zeta, Ks[i]).heavy.holds;
        const bool one = std::abs(e.tau - 1.0) <= 1e-6;
        if (!one && std::abs(e.tau) > 1e-6) {
            rep.violators.push_back(i);
            rep.simple = false;
        }
        e.lemma_consistent = one == e.heavy;
        rep.lemma_consistent = rep.lemma_consistent && e.lemma_consistent;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// NPH-stem certificate

enum class CoverCertification { Checked, Asserted };

struct CoverElement {
    OpenBox box;
    CoverCertification certification = CoverCertification::Checked;
};

struct NphInput {
    std::vector<Point> image;  // samples of the moment image
    Point p;                   // the distinguished value
    double v_radius = 0.0;     // V is the open ball of this radius around p
    Profile H;                 // must vanish on V
    std::vector<CoverElement> cover;
};

struct NphCertificate {
    bool issued = false;
    std::string refusal;
    std::size_t checked_points = 0;
    double partition_residual = 0.0;
    std::vector<double> terms;  // zeta(rho_i H)
    double term_sum = 0.0;
    double zeta_H = 0.0;
    std::vector<std::string> ledger;
};

inline constexpr double kPartitionTolerance = 1e-12;

/// zeta(H) <= sum_i zeta(rho_i H) <= 0 for a partition of unity {rho_i}
/// subordinate to a cover of the image away from V by boxes whose fibers are
/// not pseudoheavy. Refuses, naming the culprit, when a step fails.
inline NphCertificate nph_stem_certificate(const QuasiState& zeta, const NphInput& in) {
    NphCertificate c;
    auto refuse = [&](std::string why) {
        c.refusal = std::move(why);
        c.ledger.push_back("refused: " + c.refusal);
        return c;
    };
    if (in.p.size() != zeta.dim()) throw DomainError("nph_stem_certificate: p has the wrong dimension");
    if (in.cover.empty()) return refuse("empty cover");

    std::vector<Point> pts = in.image;
    for (const auto& a : zeta.atoms()) pts.push_back(a.y);
    pts.push_back(in.p);

    auto in_v = [&](const Point& y) { return distance(y, in.p) < in.v_radius; };
    for (const auto& y : pts)
        if (in_v(y) && std::abs(in.H(y)) > kPartitionTolerance)
            return refuse("H does not vanish on V at (" + detail::fmt_point(y) + ")");
    c.ledger.push_back("H = 0 on V = B(p, " + detail::fmt_num(in.v_radius) + ")");

    for (std::size_t i = 0; i < in.cover.size(); ++i) {
        const auto& e = in.cover[i];
        if (e.certification == CoverCertification::Asserted) {
            c.ledger.push_back("cover " + std::to_string(i) + ": non-pseudoheavy by assertion");
            continue;
        }
        const auto t = pseudoheavy_test(zeta, Region::box(e.box.lo, e.box.hi));
        if (t.holds) return refuse("cover element " + std::to_string(i) + " contains a pseudoheavy fiber");
        c.ledger.push_back("cover " + std::to_string(i) + ": not pseudoheavy (no witness at radius 2^-" +
                           std::to_string(t.failed_at) + ")");
    }

    std::vector<Profile> rho;
    std::vector<OpenBox> boxes;
    for (const auto& e : in.cover) boxes.push_back(e.box);
    for (std::size_t i = 0; i < boxes.size(); ++i) rho.push_back(Profile::partition_element(boxes, i));

    for (const auto& y : pts) {
        if (in_v(y)) continue;
        double total_weight = 0.0;
        for (const auto& b : boxes) total_weight += b.weight(y);
        if (!(total_weight > 0.0)) return refuse("cover gap at (" + detail::fmt_point(y) + ")");
        double sum = 0.0;
        for (const auto& r : rho) sum += r(y);
        c.partition_residual = std::max(c.partition_residual, std::abs(sum - 1.0));
        ++c.checked_points;
    }
    if (c.partition_residual > kPartitionTolerance)
        return refuse("partition of unity misses 1 by " + detail::fmt_num(c.partition_residual));
    c.ledger.push_back("sum rho_i = 1 off V at " + std::to_string(c.checked_points) + " points, residual " +
                       detail::fmt_num(c.partition_residual));

    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double t = zeta(rho[i] * in.H);
        c.terms.push_back(t);
        c.term_sum += t;
        c.ledger.push_back("zeta(rho_" + std::to_string(i) + " H) = " + detail::fmt_num(t));
        if (t > kPartitionTolerance) return refuse("term " + std::to_string(i) + " is positive");
    }
    c.zeta_H = zeta(in.H);
    if (c.zeta_H > c.term_sum + 1e-9)
        return refuse("zeta(H) exceeds the sum of its parts; the state is not quasi-subadditive here");
    c.ledger.push_back("zeta(H) = " + detail::fmt_num(c.zeta_H) + " <= sum = " + detail::fmt_num(c.term_sum) +
                       " <= 0");
    c.issued = true;
    return c;
}

// ---------------------------------------------------------------------------
// Genus-two surface

/// The state zeta_P on functions of the height function F_P of a genus-two
/// surface, averaging the values at the critical levels c3 < c4.
inline QuasiState genus2_instance(double c3, double c4) {
    if (!(c3 < c4)) throw DomainError("genus2_instance: need c3 < c4, got c3 = " + detail::fmt_num(c3) +
                                      ", c4 = " + detail::fmt_num(c4));
    return QuasiState::averaged({c3}, {c4}, "zeta_P");
}

struct Genus2Preset {
    std::vector<double> critical_values{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    double c3 = 3.0;
    double c4 = 4.0;
};

}  // namespace camlab
