#pragma once

// The generalized coupled angular momenta on (S^2 x S^2, omega_R):
//
//   J_R = z1 + R z2,        H_f = x1 x2 + y1 y2 + z1 z2 - f(z1, z2),
//
// and the one-parameter family H^s = H_f for f = (1 - s) z1 z2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "camlab/errors.hpp"
#include "camlab/polynomial.hpp"
#include "camlab/reduction.hpp"
#include "camlab/sphere.hpp"

namespace camlab {

/// Upper bound for sup |f| on [-1,1]^2 from a dense grid plus a Lipschitz allowance.
struct LinfCertificate {
    double bound = 0.0;
    double grid_max = 0.0;
    double grid_step = 0.0;
    double lipschitz_allowance = 0.0;
};

inline constexpr double kCertificateGridStep = 1e-3;

/// A smooth f : [-1,1]^2 -> R, either a polynomial (defined on all of R^2)
/// or an opaque callable restricted to the square.
class CouplingFunction {
public:
    using Callable = std::function<double(double, double)>;

    CouplingFunction() : CouplingFunction(Polynomial2{}) {}

    explicit CouplingFunction(Polynomial2 poly) {
        auto impl = std::make_shared<Impl>();
        impl->poly = std::move(poly);
        const Polynomial2 copy = *impl->poly;
        impl->fn = [copy](double a, double b) { return copy(a, b); };
        impl->name = copy.to_string();
        const auto [l1, l2] = copy.lipschitz_on_square();
        impl->cert = certify(impl->fn, kCertificateGridStep, l1 + l2);
        impl_ = std::move(impl);
    }

    static CouplingFunction parse(std::string_view spec) { return CouplingFunction(Polynomial2::parse(spec)); }

    /// f = (1 - s) z1 z2, for which H_f = H^s.
    static CouplingFunction s_family(double s) { return CouplingFunction(Polynomial2({{1.0 - s, 1, 1}})); }

    /// Registers an opaque f. Without a Lipschitz constant one is estimated from
    /// grid differences and doubled.
    static CouplingFunction black_box(std::string name, Callable fn, double grid_step = kCertificateGridStep,
                                      std::optional<double> lipschitz = std::nullopt) {
        if (!(grid_step > 0.0 && grid_step <= kCertificateGridStep))
            throw DomainError("black_box: grid step must lie in (0, 1e-3]");
        CouplingFunction out;
        auto impl = std::make_shared<Impl>();
        impl->fn = std::move(fn);
        impl->name = std::move(name);
        const double lip = lipschitz ? *lipschitz : 2.0 * estimate_lipschitz(impl->fn, grid_step);
        impl->cert = certify(impl->fn, grid_step, 2.0 * lip);
        out.impl_ = std::move(impl);
        return out;
    }

    double operator()(double z1, double z2) const { return impl_->fn(z1, z2); }

    /// Polynomials extend to R^2, black boxes are only trusted on the square.
    bool defined_off_square() const { return impl_->poly.has_value(); }
    const Polynomial2* polynomial() const { return impl_->poly ? &*impl_->poly : nullptr; }
    const LinfCertificate& linf() const { return impl_->cert; }
    const std::string& name() const { return impl_->name; }

private:
    struct Impl {
        std::optional<Polynomial2> poly;
        Callable fn;
        std::string name;
        LinfCertificate cert;
    };

    static int grid_count(double step) { return static_cast<int>(std::ceil(2.0 / step)) + 1; }

    static double grid_coord(int i, int n) { return -1.0 + 2.0 * i / (n - 1); }

    // `lipschitz_sum` bounds |df/dz1| + |df/dz2|; a point is within half a
    // cell of a node in each coordinate.
    static LinfCertificate certify(const Callable& fn, double step, double lipschitz_sum) {
        const int n = grid_count(step);
        const double h = 2.0 / (n - 1);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = grid_coord(i, n);
            for (int j = 0; j < n; ++j) {
                const double v = std::abs(fn(a, grid_coord(j, n)));
                if (!std::isfinite(v)) throw NumericError("coupling function is not finite on [-1,1]^2");
                worst = std::max(worst, v);
            }
        }
        LinfCertificate c;
        c.grid_max = worst;
        c.grid_step = h;
        c.lipschitz_allowance = 0.5 * h * lipschitz_sum;
        c.bound = worst + c.lipschitz_allowance;
        return c;
    }

    static double estimate_lipschitz(const Callable& fn, double step) {
        const int n = grid_count(step);
        const double h = 2.0 / (n - 1);
        double worst = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double a = grid_coord(i, n);
            for (int j = 0; j + 1 < n; ++j) {
                const double b = grid_coord(j, n);
                const double f0 = fn(a, b);
                worst = std::max(worst, std::abs(fn(a + h, b) - f0) / h);
                worst = std::max(worst, std::abs(fn(a, b + h) - f0) / h);
            }
        }
        return worst;
    }

    std::shared_ptr<const Impl> impl_;
};

struct MomentSystem {
    SymplecticWeight R{1.0};
    CouplingFunction f;
};

struct MomentValue {
    double a = 0.0;  // J_R
    double b = 0.0;  // H_f
};

inline double eval_J(SymplecticWeight r, const ProductPoint& p) { return p.p1.z() + r.value() * p.p2.z(); }

inline double eval_H(const CouplingFunction& f, const ProductPoint& p) {
    return p.p1.x() * p.p2.x() + p.p1.y() * p.p2.y() + p.p1.z() * p.p2.z() - f(p.p1.z(), p.p2.z());
}

inline double eval_H(const MomentSystem& sys, const ProductPoint& p) { return eval_H(sys.f, p); }

/// H^s computed directly as x1 x2 + y1 y2 + s z1 z2.
inline double eval_Hs(double s, const ProductPoint& p) {
    return p.p1.x() * p.p2.x() + p.p1.y() * p.p2.y() + s * p.p1.z() * p.p2.z();
}

inline MomentValue moment(const MomentSystem& sys, const ProductPoint& p) {
    return {eval_J(sys.R, p), eval_H(sys, p)};
}

/// Ambient extension of J_R for bracket and flow computations.
inline auto j_field(SymplecticWeight r) {
    return [rv = r.value()](const Coords6& c) { return c[2] + rv * c[5]; };
}

/// Ambient extension of H_f.
inline auto h_field(CouplingFunction f) {
    return [f = std::move(f)](const Coords6& c) {
        return c[0] * c[3] + c[1] * c[4] + c[2] * c[5] - f(c[2], c[5]);
    };
}

struct FiberSample {
    double s = 0.0;
    MomentValue target;
    std::vector<ProductPoint> points;
    double residual = 0.0;
};

inline constexpr double kFiberResidual = 1e-10;

/// Samples the fiber (J_1, H^s)^{-1}(0, b) by lifting the reduced level set:
/// n_theta annulus points times n_phase orbit phases. On the pinched level
/// b = -s the two pole pairs (N,S) and (S,N) are appended.
inline FiberSample fiber_sample(double s, double b, int n_theta, int n_phase) {
    detail::check_s(s, "fiber_sample");
    if (!(b >= -s && b <= 0.0))
        throw DomainError("fiber_sample: b = " + std::to_string(b) + " is outside the window [-s, 0] = [" +
                          std::to_string(-s) + ", 0]");
    if (n_theta < 1 || n_phase < 1) throw DomainError("fiber_sample: counts must be positive");

    const bool pinched = b == -s;
    const ReducedCurve reduced = pinched ? pinched_set(s, n_theta) : curve(s, b, std::max(2, n_theta));

    FiberSample out;
    out.s = s;
    out.target = {0.0, b};
    out.points.reserve(reduced.points.size() * static_cast<std::size_t>(n_phase) + 2);
    for (const auto& q : reduced.points)
        for (int k = 0; k < n_phase; ++k)
            out.points.push_back(lift(q, 2.0 * std::numbers::pi * k / n_phase));
    if (pinched) {
        out.points.push_back({SpherePoint::north(), SpherePoint::south()});
        out.points.push_back({SpherePoint::south(), SpherePoint::north()});
    }

    for (const auto& p : out.points) {
        out.residual = std::max(out.residual, std::abs(p.p1.z() + p.p2.z()));
        out.residual = std::max(out.residual, std::abs(eval_Hs(s, p) - b));
    }
    if (out.residual > kFiberResidual)
        throw NumericError("fiber_sample: lifted points miss the fiber by " + std::to_string(out.residual));
    return out;
}

enum class FiberTopology { Sphere, DoublyPinchedTorus, Torus, Empty };

inline const char* to_string(FiberTopology t) {
    switch (t) {
        case FiberTopology::Sphere: return "Sphere";
        case FiberTopology::DoublyPinchedTorus: return "DoublyPinchedTorus";
        case FiberTopology::Torus: return "Torus";
        case FiberTopology::Empty: return "Empty";
    }
    return "?";
}

struct FiberClass {
    FiberTopology topology;
    std::string reason;
};

/// Topology of (J_1, H^s)^{-1}(0, b), by case on (s, b).
inline FiberClass classify_fiber(double s, double b) {
    if (s == 1.0 && b == -1.0)
        return {FiberTopology::Sphere, "s = 1, b = -1: the antidiagonal {p2 = -p1}"};
    if (s >= 0.0 && s < 1.0 && b == -s)
        return {FiberTopology::DoublyPinchedTorus,
                "b = -s with 0 <= s < 1: circle bundle over the lines theta = +-arccos(-s), collapsed at (N,S) and (S,N)"};
    if (s > 0.0 && s <= 1.0 && b > -s && b <= 0.0)
        return {FiberTopology::Torus, "-s < b <= 0: circle bundle over the closed curve alpha(s, b)"};
    return {FiberTopology::Empty, "outside the parameter triangle 0 <= s <= 1, -s <= b <= 0"};
}

struct MomentImage {
    std::vector<MomentValue> values;
    double a_min = 0.0, a_max = 0.0;
    double b_min = 0.0, b_max = 0.0;
};

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double f = inv;
    double r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

}  // namespace detail

/// The i-th point of a Halton sequence on S^2 x S^2, area-uniform in each factor.
inline ProductPoint halton_point(std::uint64_t i) {
    const double z1 = 2.0 * detail::radical_inverse(i, 2) - 1.0;
    const double a1 = 2.0 * std::numbers::pi * detail::radical_inverse(i, 3);
    const double z2 = 2.0 * detail::radical_inverse(i, 5) - 1.0;
    const double a2 = 2.0 * std::numbers::pi * detail::radical_inverse(i, 7);
    return {SpherePoint::from_cylindrical(z1, a1), SpherePoint::from_cylindrical(z2, a2)};
}

inline MomentImage moment_values(const MomentSystem& sys, const std::vector<ProductPoint>& points) {
    MomentImage img;
    img.values.reserve(points.size());
    for (const auto& p : points) img.values.push_back(moment(sys, p));
    if (!img.values.empty()) {
        auto [amin, amax] = std::minmax_element(img.values.begin(), img.values.end(),
                                                [](const MomentValue& x, const MomentValue& y) { return x.a < y.a; });
        auto [bmin, bmax] = std::minmax_element(img.values.begin(), img.values.end(),
                                                [](const MomentValue& x, const MomentValue& y) { return x.b < y.b; });
        img.a_min = amin->a;
        img.a_max = amax->a;
        img.b_min = bmin->b;
        img.b_max = bmax->b;
    }
    return img;
}

/// Moment values at n deterministic quasi-random points (Halton indices 1..n).
inline MomentImage moment_image(const MomentSystem& sys, int n) {
    if (n < 1) throw DomainError("moment_image: n must be positive");
    std::vector<ProductPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) pts.push_back(halton_point(static_cast<std::uint64_t>(i)));
    return moment_values(sys, pts);
}

}  // namespace camlab
