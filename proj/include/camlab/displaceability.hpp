#pragma once

// Displaceability of fibers of Phi_{R,f} = (J_R, H_f).
//
// The involution psi maps the fiber over (a, b) into {-a} x R. On the slice
// a = 0 (so z1 = -R z2) one has H_f(psi p) = -b + 2 F(z2) with
//
//   F_{R,f}(z) = -(f(-Rz, z) + f(Rz, -z) + 2 R z^2) / 2,
//
// hence psi displaces every fiber except possibly those over {0} x [m, M],
// [m, M] being the range of F. Inside the window nothing is claimed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "camlab/errors.hpp"
#include "camlab/moment.hpp"
#include "camlab/reduction.hpp"
#include "camlab/sphere.hpp"

namespace camlab {

namespace cite {
inline constexpr const char* kStem = "psi-stem-criterion";
inline constexpr const char* kTwoFiber = "two-fiber-pseudoheavy-separation";
inline constexpr const char* kReducedLift = "reduced-displacement-lift";
inline constexpr const char* kPsiWindow = "psi-window-lemma";
}  // namespace cite

/// Half-width of the z-range on which F_{R,f} may be evaluated. Polynomials
/// extend off the square; opaque couplings need |R z| <= 1.
inline double f_domain_half_width(SymplecticWeight r, const CouplingFunction& f) {
    return f.defined_off_square() ? 1.0 : std::min(1.0, 1.0 / r.value());
}

inline double F_Rf(SymplecticWeight r, const CouplingFunction& f, double z) {
    const double half = f_domain_half_width(r, f);
    if (!(std::abs(z) <= half))
        throw DomainError("F_Rf: z = " + std::to_string(z) + " is outside the admissible range [-" +
                          std::to_string(half) + ", " + std::to_string(half) + "]");
    const double rv = r.value();
    return -0.5 * (f(-rv * z, z) + f(rv * z, -z) + 2.0 * rv * z * z);
}

struct DisplacementWindow {
    double m = 0.0;
    double M = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
    double resolution = 0.0;  // grid step before refinement
    double z_limit = 1.0;     // scanned range is [-z_limit, z_limit]
};

inline constexpr int kWindowGrid = 10000;
inline constexpr double kRefineTolerance = 1e-10;

namespace detail {

// Golden-section search for the minimum of g on [lo, hi].
template <class G>
std::pair<double, double> golden_min(const G& g, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = g(x1);
    double g2 = g(x2);
    while (hi - lo > tol) {
        if (g1 < g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, g(x)};
}

}  // namespace detail

/// Range of F_{R,f}: dense grid, then golden-section refinement around the
/// best grid node. The refined value replaces the grid value only if better.
inline DisplacementWindow window(SymplecticWeight r, const CouplingFunction& f) {
    const double half = f_domain_half_width(r, f);
    auto F = [&](double z) { return F_Rf(r, f, std::clamp(z, -half, half)); };
    const int n = kWindowGrid + 1;
    const double h = 2.0 * half / kWindowGrid;
    auto node = [&](int i) { return i == kWindowGrid ? half : -half + h * i; };

    int imin = 0;
    int imax = 0;
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (int i = 0; i < n; ++i) {
        const double v = F(node(i));
        if (!std::isfinite(v)) throw NumericError("window: F_Rf is not finite at z = " + std::to_string(node(i)));
        if (v < vmin) vmin = v, imin = i;
        if (v > vmax) vmax = v, imax = i;
    }

    DisplacementWindow w;
    w.resolution = h;
    w.z_limit = half;
    w.m = vmin;
    w.argmin = node(imin);
    w.M = vmax;
    w.argmax = node(imax);

    const auto lo = [&](int i) { return node(std::max(0, i - 1)); };
    const auto hi = [&](int i) { return node(std::min(kWindowGrid, i + 1)); };
    const auto [zmin, fmin] = detail::golden_min(F, lo(imin), hi(imin), kRefineTolerance);
    if (fmin < w.m) w.m = fmin, w.argmin = zmin;
    const auto [zmax, negmax] = detail::golden_min([&](double z) { return -F(z); }, lo(imax), hi(imax), kRefineTolerance);
    if (-negmax > w.M) w.M = -negmax, w.argmax = zmax;
    return w;
}

enum class VerdictTag {
    DisplaceableByPsi,
    DisplaceableInReduction,
    InsideWindowUnknown,
    NonDisplaceableCited,
    SuperheavyCited,
    NotApplicable,
};

inline const char* to_string(VerdictTag t) {
    switch (t) {
        case VerdictTag::DisplaceableByPsi: return "DisplaceableByPsi";
        case VerdictTag::DisplaceableInReduction: return "DisplaceableInReduction";
        case VerdictTag::InsideWindowUnknown: return "InsideWindow-Unknown";
        case VerdictTag::NonDisplaceableCited: return "NonDisplaceable-Cited";
        case VerdictTag::SuperheavyCited: return "Superheavy-Cited";
        case VerdictTag::NotApplicable: return "NotApplicable";
    }
    return "?";
}

/// Named numbers backing a verdict, kept in insertion order.
using Certificate = std::vector<std::pair<std::string, double>>;

struct EmpiricalCheck {
    std::size_t samples = 0;
    double fiber_residual = 0.0;   // max |Phi(p) - (a, b)| over the samples
    double min_distance = std::numeric_limits<double>::infinity();
    double image_excess = 0.0;     // how far images stray outside the certified set
    bool consistent = true;
};

struct Verdict {
    VerdictTag tag = VerdictTag::NotApplicable;
    double margin = 0.0;
    Certificate certificate;
    std::string citation;
    std::string note;
    std::optional<EmpiricalCheck> empirical;
};

/// Deterministic points on Phi_{R,f}^{-1}(a, b). For each admissible height z2
/// the first height is z1 = a - R z2 and the azimuth difference solves
/// r1 r2 cos(delta) = b - z1 z2 + f(z1, z2). Empty when the fiber is missed.
inline std::vector<ProductPoint> fiber_proxy(SymplecticWeight r, const CouplingFunction& f, double a, double b,
                                             int n) {
    std::vector<ProductPoint> out;
    if (n <= 0) return out;
    const double rv = r.value();
    const double lo = std::max(-1.0, (a - 1.0) / rv);
    const double hi = std::min(1.0, (a + 1.0) / rv);
    if (!(lo <= hi)) return out;

    struct Slot {
        double z1, z2, delta;
    };
    std::vector<Slot> slots;
    const int scan = std::max(4 * n, 1000);
    for (int i = 0; i <= scan; ++i) {
        const double z2 = lo + (hi - lo) * i / scan;
        const double z1 = std::clamp(a - rv * z2, -1.0, 1.0);
        const double rr = std::sqrt((1.0 - z1) * (1.0 + z1) * (1.0 - z2) * (1.0 + z2));
        if (rr < 1e-12) continue;
        const double c = (b - z1 * z2 + f(z1, z2)) / rr;
        if (std::abs(c) <= 1.0) slots.push_back({z1, z2, std::acos(c)});
    }
    if (slots.empty()) return out;

    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Slot& sl = slots[static_cast<std::size_t>(k) * slots.size() / static_cast<std::size_t>(n)];
        const double phase = golden_angle * k;
        const double delta = k % 2 == 0 ? sl.delta : -sl.delta;
        out.push_back({SpherePoint::from_cylindrical(sl.z1, phase), SpherePoint::from_cylindrical(sl.z2, phase + delta)});
    }
    return out;
}

inline constexpr double kImageSlack = 1e-9;
inline constexpr double kMarginSlack = 1e-6;

/// Verdict for the fiber over (a, b). When n > 0 the analytic certificate is
/// cross-checked on n fiber points.
inline Verdict displaceable(SymplecticWeight r, const CouplingFunction& f, double a, double b, int n) {
    const DisplacementWindow w = window(r, f);
    const double lo = 2.0 * w.m - b;
    const double hi = 2.0 * w.M - b;

    Verdict v;
    v.citation = cite::kPsiWindow;
    v.certificate = {{"m", w.m}, {"M", w.M}, {"image_a", -a}};
    if (a != 0.0) {
        v.tag = VerdictTag::DisplaceableByPsi;
        v.margin = 2.0 * std::abs(a);
        v.note = "a != 0: psi sends the fiber into {-a} x R";
    } else {
        v.certificate.emplace_back("image_b_min", lo);
        v.certificate.emplace_back("image_b_max", hi);
        const double gap = std::max(w.m - b, b - w.M);
        if (gap > 0.0) {
            v.tag = VerdictTag::DisplaceableByPsi;
            v.margin = 2.0 * gap;
            v.note = "a = 0 and b is outside [m, M]: psi sends the fiber into {0} x [2m - b, 2M - b]";
        } else {
            v.tag = VerdictTag::InsideWindowUnknown;
            v.margin = 0.0;
            v.note = "b lies in [m, M]; no certificate either way";
        }
    }

    if (n > 0) {
        EmpiricalCheck e;
        const MomentSystem sys{r, f};
        for (const auto& p : fiber_proxy(r, f, a, b, n)) {
            const MomentValue here = moment(sys, p);
            e.fiber_residual = std::max({e.fiber_residual, std::abs(here.a - a), std::abs(here.b - b)});
            const MomentValue img = moment(sys, psi(p));
            e.min_distance = std::min(e.min_distance, std::hypot(img.a - a, img.b - b));
            double excess = std::abs(img.a + a);
            if (a == 0.0) excess = std::max({excess, lo - img.b, img.b - hi});
            e.image_excess = std::max(e.image_excess, excess);
            ++e.samples;
        }
        e.consistent = e.image_excess <= kImageSlack && e.fiber_residual <= kImageSlack;
        if (v.tag == VerdictTag::DisplaceableByPsi)
            e.consistent = e.consistent && e.min_distance >= v.margin - kMarginSlack;
        v.empirical = e;
    }
    return v;
}

inline constexpr double kStemTolerance = 1e-10;

/// Fires when F_{R,f} vanishes on the grid: then every fiber other than the
/// one over (0, 0) is displaced by psi, and that fiber is a stem.
inline Verdict stem_check(SymplecticWeight r, const CouplingFunction& f) {
    const double half = f_domain_half_width(r, f);
    double sup = 0.0;
    for (int i = 0; i <= kWindowGrid; ++i) {
        const double z = i == kWindowGrid ? half : -half + 2.0 * half * i / kWindowGrid;
        sup = std::max(sup, std::abs(F_Rf(r, f, z)));
    }
    Verdict v;
    v.certificate = {{"grid_sup_abs_F", sup}, {"grid_points", kWindowGrid + 1.0}, {"z_limit", half}};
    if (sup <= kStemTolerance) {
        v.tag = VerdictTag::SuperheavyCited;
        v.citation = cite::kStem;
        v.note = "F_Rf vanishes, so psi displaces every fiber except the one over (0, 0), which is a stem";
    } else {
        v.tag = VerdictTag::NotApplicable;
        v.note = "F_Rf does not vanish on the grid";
    }
    return v;
}

/// Compares the disk areas bounded by alpha(s, b) and alpha(1, d) in the
/// reduced annulus. Two closed curves of different enclosed area can be
/// separated by nesting the smaller inside the larger. The pinched set
/// b = -s runs from one boundary to the other, so there only alpha(1, d) can
/// be nested, inside the strip. The lift to S^2 x S^2 is cited, not built.
inline Verdict annulus_displaceable(double s, double b, double d) {
    if (!(d >= -1.0 && d <= -0.5))
        throw DomainError("annulus_displaceable: d must lie in [-1, -1/2], got " + std::to_string(d));
    const AreaResult lhs = area(s, b);
    const AreaResult rhs = area(1.0, d);
    const double threshold = std::max(10.0 * (lhs.estimated_error + rhs.estimated_error), 1e-12);
    const bool pinched = b == -s;

    Verdict v;
    v.certificate = {{"area_s_b", lhs.value}, {"area_1_d", rhs.value}, {"threshold", threshold}};
    v.margin = pinched ? lhs.value - rhs.value : std::abs(lhs.value - rhs.value);
    if (v.margin > threshold) {
        v.tag = VerdictTag::DisplaceableInReduction;
        v.citation = cite::kReducedLift;
        v.note = pinched ? "alpha(1, d) encloses less area than the pinched strip and fits inside it"
                 : lhs.value < rhs.value ? "alpha(s, b) encloses less area than alpha(1, d) and nests inside it"
                                         : "alpha(1, d) encloses less area than alpha(s, b) and nests inside it";
    } else {
        v.tag = VerdictTag::InsideWindowUnknown;
        v.note = "area comparison is not strict beyond the quadrature threshold";
    }
    return v;
}

struct SeparatedFiber {
    double c = 0.0;             // the level H^1 = c of the reference fiber
    double window_lo = 0.0;     // open window (c - 1/4, c + 1/4)
    double window_hi = 0.0;
    std::size_t samples = 0;
    double h_min = 0.0;         // range of H_f over the samples
    double h_max = 0.0;
    double j_max = 0.0;         // max |J_1| over the samples
    double margin = 0.0;
    bool inside = false;
    Verdict verdict;
};

struct SeparationReport {
    std::string f_name;
    double linf_bound = 0.0;
    std::vector<SeparatedFiber> fibers;
    double margin = 0.0;
};

/// With ||f|| < 1/4 the images under Phi_{1,f} of the H^1-fibers at -1/2 and
/// -1 land in disjoint windows, giving two non-displaceable fibers.
inline SeparationReport two_fiber_separation(const CouplingFunction& f, int n_theta = 200, int n_phase = 16) {
    const double bound = f.linf().bound;
    if (!(bound < 0.25))
        throw HypothesisFailure("two_fiber_separation: certified sup|f| bound " + std::to_string(bound) +
                                " is not below 1/4");
    SeparationReport rep;
    rep.f_name = f.name();
    rep.linf_bound = bound;
    rep.margin = std::numeric_limits<double>::infinity();
    const MomentSystem sys{SymplecticWeight{1.0}, f};
    for (const double c : {-0.5, -1.0}) {
        SeparatedFiber sf;
        sf.c = c;
        sf.window_lo = c - 0.25;
        sf.window_hi = c + 0.25;
        const FiberSample sample = fiber_sample(1.0, c, n_theta, n_phase);
        sf.h_min = std::numeric_limits<double>::infinity();
        sf.h_max = -sf.h_min;
        for (const auto& p : sample.points) {
            const MomentValue mv = moment(sys, p);
            sf.h_min = std::min(sf.h_min, mv.b);
            sf.h_max = std::max(sf.h_max, mv.b);
            sf.j_max = std::max(sf.j_max, std::abs(mv.a));
        }
        sf.samples = sample.points.size();
        sf.margin = std::min(sf.h_min - sf.window_lo, sf.window_hi - sf.h_max);
        sf.inside = sf.margin > 0.0 && sf.j_max == 0.0;
        sf.verdict.certificate = {{"c", c}, {"h_min", sf.h_min}, {"h_max", sf.h_max}, {"margin", sf.margin}};
        sf.verdict.margin = sf.margin;
        if (sf.inside) {
            sf.verdict.tag = VerdictTag::NonDisplaceableCited;
            sf.verdict.citation = cite::kTwoFiber;
            sf.verdict.note = "image lies in {0} x (c - 1/4, c + 1/4), disjoint from the other window";
        } else {
            sf.verdict.tag = VerdictTag::NotApplicable;
            sf.verdict.note = "sampled image left the window";
        }
        rep.margin = std::min(rep.margin, sf.margin);
        rep.fibers.push_back(std::move(sf));
    }
    return rep;
}

struct AlephBracket {
    double low = 0.25;
    double high = 1.0;
    std::string low_key = cite::kTwoFiber;
    std::string high_key = cite::kStem;
};

/// Bounds on the infimum of sup|f| over couplings for which Phi_{1,f} has a
/// single non-displaceable fiber. The exact value is open.
inline AlephBracket aleph_bracket() { return {}; }

}  // namespace camlab
