#pragma once

// The reduced space of J_1 = z1 + z2 at level 0, away from the poles, is the
// open annulus (-1,1) x R/2piZ with area form sigma = dz ^ dtheta / (4 pi),
// of total area 1. A point (x1, y1, z, x2, y2, -z) maps to (z, theta) where
// theta is the signed angle from (x1, y1) to (x2, y2).
//
// The level set H^s = b of the reduced Hamiltonian (1 - z^2) cos(theta) - s z^2
// is the closed curve z^2 = (cos(theta) - b) / (cos(theta) + s) for -s < b <= 0,
// and the pair of lines theta = +-arccos(-s) for b = -s.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "camlab/errors.hpp"
#include "camlab/quadrature.hpp"
#include "camlab/sphere.hpp"

namespace camlab {

/// Representative of an angle in (-pi, pi].
inline double canonical_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::remainder(theta, two_pi);  // in [-pi, pi]
    if (t <= -std::numbers::pi) t += two_pi;
    return t;
}

class AnnulusPoint {
public:
    AnnulusPoint(double z, double theta) : z_(z), theta_(canonical_angle(theta)) {
        if (!(std::abs(z) < 1.0)) throw DomainError("AnnulusPoint: |z| must be < 1, got " + std::to_string(z));
        if (!std::isfinite(theta)) throw DomainError("AnnulusPoint: non-finite angle");
    }

    double z() const { return z_; }
    double theta() const { return theta_; }

private:
    double z_;
    double theta_;
};

inline constexpr double kLevelTolerance = 1e-10;
inline constexpr double kPoleMargin = 1e-12;

/// The quotient map at J_1 = 0.
inline AnnulusPoint reduce(const ProductPoint& p) {
    const double j = p.p1.z() + p.p2.z();
    if (std::abs(j) > kLevelTolerance)
        throw DomainError("reduce: point is not on the level J_1 = 0 (J_1 = " + std::to_string(j) + ")");
    if (std::abs(p.p1.z()) >= 1.0 - kPoleMargin || std::abs(p.p2.z()) >= 1.0 - kPoleMargin)
        throw DomainError("reduce: point is at a pole, where the reduction is undefined");
    const double cross = p.p1.x() * p.p2.y() - p.p1.y() * p.p2.x();
    const double dot = p.p1.x() * p.p2.x() + p.p1.y() * p.p2.y();
    return {p.p1.z(), std::atan2(cross, dot)};
}

/// A point of the circle orbit over q; `phase` is the azimuth of the first factor.
inline ProductPoint lift(const AnnulusPoint& q, double phase) {
    return {SpherePoint::from_cylindrical(q.z(), phase), SpherePoint::from_cylindrical(-q.z(), phase + q.theta())};
}

struct ReducedCurve {
    double s = 0.0;
    double b = 0.0;
    bool pinched = false;
    std::vector<AnnulusPoint> points;

    /// Largest violation of the defining equation over the sampled points.
    double residual() const {
        double worst = 0.0;
        for (const auto& q : points) {
            double r;
            if (pinched) {
                const double line = std::acos(-s);
                r = std::min(std::abs(std::abs(q.theta()) - line),
                             std::abs(canonical_angle(q.theta() - line)));
            } else {
                const double c = std::cos(q.theta());
                r = std::abs(q.z() * q.z() * (c + s) - (c - b));
            }
            worst = std::max(worst, r);
        }
        return worst;
    }
};

namespace detail {

inline void check_s(double s, const char* op) {
    if (!(s >= 0.0 && s <= 1.0))
        throw DomainError(std::string(op) + ": s must lie in [0, 1], got " + std::to_string(s));
}

}  // namespace detail

/// n points tracing alpha(s, b), first the z >= 0 arc then the z <= 0 arc.
inline ReducedCurve curve(double s, double b, int n) {
    detail::check_s(s, "curve");
    if (!(b > -s && b <= 0.0))
        throw DomainError("curve: b must lie in (-s, 0] = (" + std::to_string(-s) + ", 0], got " +
                          std::to_string(b) + "; use pinched_set for b = -s");
    if (n < 2) throw DomainError("curve: need at least two points");

    ReducedCurve out{s, b, false, {}};
    out.points.reserve(static_cast<std::size_t>(n));
    const double end = std::acos(b);
    const int upper = n / 2;
    const int lower = n - upper;
    auto emit = [&](double theta, double sign) {
        const double c = std::cos(theta);
        const double z2 = std::max(0.0, (c - b) / (c + s));
        out.points.emplace_back(sign * std::sqrt(z2), theta);
    };
    // Cosine spacing concentrates points where z changes fastest.
    for (int k = 0; k < upper; ++k) {
        const double t = static_cast<double>(k) / upper;
        emit(-end * std::cos(std::numbers::pi * t), 1.0);
    }
    for (int k = 0; k < lower; ++k) {
        const double t = static_cast<double>(k) / lower;
        emit(end * std::cos(std::numbers::pi * t), -1.0);
    }
    return out;
}

/// The pinched set A_s: the lines theta = +-arccos(-s), which coincide when s = 1.
inline ReducedCurve pinched_set(double s, int n) {
    detail::check_s(s, "pinched_set");
    if (n < 1) throw DomainError("pinched_set: need at least one point");
    ReducedCurve out{s, -s, true, {}};
    const double line = std::acos(-s);
    const bool merged = canonical_angle(line) == canonical_angle(-line);
    const int lines = merged ? 1 : 2;
    const int per_line = std::max(1, n / lines);
    for (int l = 0; l < lines; ++l) {
        const int count = l + 1 == lines ? n - per_line * (lines - 1) : per_line;
        const double theta = l == 0 ? line : -line;
        for (int k = 0; k < count; ++k) {
            const double z = -1.0 + (2.0 * k + 1.0) / count;
            out.points.emplace_back(z, theta);
        }
    }
    return out;
}

struct AreaResult {
    double value = 0.0;
    double estimated_error = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr double kAreaTolerance = 1e-9;
inline constexpr double kDefaultQuadratureTolerance = 1e-12;

/// sigma-area of the disk D(s, b) bounded by alpha(s, b):
///   (1/pi) * integral_0^{arccos b} sqrt((cos t - b) / (cos t + s)) dt,
/// and arccos(-s)/pi on the pinched edge b = -s.
///
/// The square-root zero at t = arccos b is removed by substituting
/// cos t - b = u^2 on the upper half of the range, which turns the integrand
/// into 2u^2 / sqrt((u^2 + b + s)(1 - b - u^2)(1 + b + u^2)).
inline AreaResult area(double s, double b, double tolerance = kDefaultQuadratureTolerance) {
    detail::check_s(s, "area");
    if (!(b >= -s && b <= 0.0))
        throw DomainError("area: b must lie in [-s, 0] = [" + std::to_string(-s) + ", 0], got " +
                          std::to_string(b));
    if (b == -s) return {std::acos(-s) / std::numbers::pi, 0.0, 0};

    const double end = std::acos(b);
    const double split = 0.5 * end;
    const double part_tol = 0.25 * std::numbers::pi * tolerance;

    auto direct = [s, b](double t) {
        const double c = std::cos(t);
        return std::sqrt(std::max(0.0, c - b) / (c + s));
    };
    auto substituted = [s, b](double u) {
        const double u2 = u * u;
        const double den = (u2 + b + s) * (1.0 - b - u2) * (1.0 + b + u2);
        return den > 0.0 ? 2.0 * u2 / std::sqrt(den) : 0.0;
    };

    const auto near = integrate_adaptive(direct, 0.0, split, part_tol);
    const double u_split = std::sqrt(std::cos(split) - b);
    const auto far = integrate_adaptive(substituted, 0.0, u_split, part_tol);

    AreaResult out;
    out.value = (near.value + far.value) / std::numbers::pi;
    out.estimated_error = (near.error + far.error) / std::numbers::pi;
    out.evaluations = near.evaluations + far.evaluations;
    if (!near.converged || !far.converged || out.estimated_error > kAreaTolerance)
        throw NumericError("area: quadrature did not converge for s = " + std::to_string(s) +
                               ", b = " + std::to_string(b) + " (error estimate " +
                               std::to_string(out.estimated_error) + ")",
                           out.evaluations);
    return out;
}

/// s_c = -cos(pi * Area(D(1, c))) for c in [-1, -1/2].
inline double s_of_c(double c, double tolerance = kDefaultQuadratureTolerance) {
    if (!(c >= -1.0 && c <= -0.5))
        throw DomainError("s_of_c: c must lie in [-1, -1/2], got " + std::to_string(c));
    const double s = -std::cos(std::numbers::pi * area(1.0, c, tolerance).value);
    if (s < -1e-12 || s > 1.0 + 1e-12)
        throw NumericError("s_of_c: result " + std::to_string(s) + " left [0, 1]");
    return std::clamp(s, 0.0, 1.0);
}

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// The unique b in (-s, 0) with Area(D(s, b)) = Area(D(1, d)), by bisection.
/// Requires Area(D(s, 0)) < Area(D(1, d)) < Area(D(s, -s)).
inline RootResult b_of_d(double s, double d, double tolerance = kDefaultQuadratureTolerance) {
    detail::check_s(s, "b_of_d");
    if (!(d >= -1.0 && d <= -0.5))
        throw DomainError("b_of_d: d must lie in [-1, -1/2], got " + std::to_string(d));
    const double target = area(1.0, d, tolerance).value;
    const double top = area(s, -s, tolerance).value;
    const double bottom = area(s, 0.0, tolerance).value;
    if (!(target < top && target > bottom))
        throw DomainError("b_of_d: Area(D(1, d)) = " + std::to_string(target) + " is not inside (" +
                          std::to_string(bottom) + ", " + std::to_string(top) +
                          "), so no root exists in (-s, 0)");

    double lo = -s;  // area(lo) > target
    double hi = 0.0;  // area(hi) < target
    RootResult out;
    while (hi - lo > 1e-14 && out.iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (area(s, mid, tolerance).value > target ? lo : hi) = mid;
        ++out.iterations;
    }
    out.root = 0.5 * (lo + hi);
    out.residual = std::abs(area(s, out.root, tolerance).value - target);
    return out;
}

}  // namespace camlab
