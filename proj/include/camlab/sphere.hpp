#pragma once

// Points on S^2 and on the weighted product (S^2 x S^2, omega_R), Poisson
// brackets and Hamiltonian flows of ambient scalar fields.
//
// Sign convention: on a single sphere with its standard area form the
// Hamiltonian vector field of H is X_H(p) = grad H(p) x p, so the height
// function z generates positive rotation about the z-axis at unit angular
// speed. On the product the second factor's field is scaled by 1/R. The
// bracket is {F, G} = dG(X_F), the derivative of G along the flow of F.

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <string>

#include "camlab/errors.hpp"

namespace camlab {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// A point of the unit sphere. Every public constructor projects onto S^2.
class SpherePoint {
public:
    SpherePoint() : v_{0.0, 0.0, 1.0} {}

    SpherePoint(double x, double y, double z) : SpherePoint(Vec3{x, y, z}) {}

    explicit SpherePoint(const Vec3& v) {
        const double n = v.norm();
        if (!std::isfinite(n) || n == 0.0)
            throw DomainError("SpherePoint: cannot project a zero or non-finite vector onto S^2");
        v_ = (1.0 / n) * v;
    }

    /// Point at height z and azimuth `angle`. The height is kept exactly; the
    /// result is unit length to rounding.
    static SpherePoint from_cylindrical(double z, double angle) {
        if (!(std::abs(z) <= 1.0)) throw DomainError("SpherePoint: height must lie in [-1, 1]");
        const double r = std::sqrt((1.0 - z) * (1.0 + z));
        return SpherePoint(Vec3{r * std::cos(angle), r * std::sin(angle), z}, Exact{});
    }

    static SpherePoint north() { return SpherePoint(Vec3{0.0, 0.0, 1.0}, Exact{}); }
    static SpherePoint south() { return SpherePoint(Vec3{0.0, 0.0, -1.0}, Exact{}); }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    const Vec3& vec() const { return v_; }

    /// Coordinatewise sign change. Exact: no renormalization happens.
    SpherePoint reflected(int sx, int sy, int sz) const {
        return SpherePoint(Vec3{sx * v_.x, sy * v_.y, sz * v_.z}, Exact{});
    }

    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

private:
    struct Exact {};
    SpherePoint(const Vec3& v, Exact) : v_(v) {}

    Vec3 v_;
};

/// Ambient coordinates (x1, y1, z1, x2, y2, z2) in R^3 x R^3.
using Coords6 = std::array<double, 6>;

struct ProductPoint {
    SpherePoint p1;
    SpherePoint p2;

    Coords6 coords() const {
        return {p1.x(), p1.y(), p1.z(), p2.x(), p2.y(), p2.z()};
    }

    static ProductPoint from_coords(const Coords6& c) {
        return {SpherePoint(c[0], c[1], c[2]), SpherePoint(c[3], c[4], c[5])};
    }

    friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// The weight R of omega_R = pr_1^* omega + R pr_2^* omega.
class SymplecticWeight {
public:
    explicit SymplecticWeight(double r) : r_(r) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw DomainError("SymplecticWeight: R must be a finite positive number, got " + std::to_string(r));
    }

    double value() const { return r_; }

private:
    double r_;
};

/// A scalar field given on the ambient space R^3 x R^3.
template <class F>
concept AmbientField = std::regular_invocable<const F&, const Coords6&> &&
                       std::convertible_to<std::invoke_result_t<const F&, const Coords6&>, double>;

inline constexpr double kGradientStep = 1e-6;

/// Central-difference gradient of an ambient field, split by factor.
template <AmbientField F>
std::array<Vec3, 2> ambient_gradient(const F& field, const Coords6& c, double h = kGradientStep) {
    std::array<double, 6> g{};
    for (std::size_t i = 0; i < 6; ++i) {
        Coords6 plus = c;
        Coords6 minus = c;
        plus[i] += h;
        minus[i] -= h;
        const double fp = static_cast<double>(field(plus));
        const double fm = static_cast<double>(field(minus));
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw NumericError("field evaluation returned a non-finite value");
        g[i] = (fp - fm) / (2.0 * h);
    }
    return {Vec3{g[0], g[1], g[2]}, Vec3{g[3], g[4], g[5]}};
}

namespace detail {

inline Vec3 tangent_part(const Vec3& v, const Vec3& p) {
    return v - (v.dot(p) / p.dot(p)) * p;
}

// X_H at ambient position c (need not lie exactly on the spheres).
template <AmbientField F>
Coords6 vector_field_at(const F& h, const Coords6& c, double r) {
    const auto grad = ambient_gradient(h, c);
    const Vec3 p1{c[0], c[1], c[2]};
    const Vec3 p2{c[3], c[4], c[5]};
    const Vec3 v1 = tangent_part(grad[0], p1).cross(p1);
    const Vec3 v2 = (1.0 / r) * tangent_part(grad[1], p2).cross(p2);
    return {v1.x, v1.y, v1.z, v2.x, v2.y, v2.z};
}

inline Coords6 axpy(const Coords6& base, double s, const Coords6& dir) {
    Coords6 out{};
    for (std::size_t i = 0; i < 6; ++i) out[i] = base[i] + s * dir[i];
    return out;
}

}  // namespace detail

/// Hamiltonian vector field of `h` at `p`, one tangent vector per factor.
template <AmbientField F>
std::array<Vec3, 2> hamiltonian_vector(const F& h, const ProductPoint& p, SymplecticWeight r) {
    const Coords6 v = detail::vector_field_at(h, p.coords(), r.value());
    return {Vec3{v[0], v[1], v[2]}, Vec3{v[3], v[4], v[5]}};
}

/// {F, G}(p) = dG(X_F)(p).
template <AmbientField F, AmbientField G>
double poisson_bracket(const F& f, const G& g, const ProductPoint& p, SymplecticWeight r) {
    const auto gf = ambient_gradient(f, p.coords());
    const auto gg = ambient_gradient(g, p.coords());
    const Vec3& q1 = p.p1.vec();
    const Vec3& q2 = p.p2.vec();
    return gg[0].dot(gf[0].cross(q1)) + gg[1].dot(gf[1].cross(q2)) / r.value();
}

/// Time-t map of the Hamiltonian flow of `h`, classical RK4 with fixed step
/// at most `dt`; each factor is renormalized onto S^2 after every step.
template <AmbientField F>
ProductPoint hamiltonian_flow(const F& h, const ProductPoint& p0, SymplecticWeight r, double t, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw DomainError("hamiltonian_flow: step size must be positive");
    if (!std::isfinite(t)) throw DomainError("hamiltonian_flow: time must be finite");
    if (t == 0.0) return p0;

    const auto steps = static_cast<long>(std::ceil(std::abs(t) / dt));
    const double step = t / static_cast<double>(steps);
    const double rv = r.value();

    ProductPoint p = p0;
    for (long i = 0; i < steps; ++i) {
        const Coords6 c = p.coords();
        const Coords6 k1 = detail::vector_field_at(h, c, rv);
        const Coords6 k2 = detail::vector_field_at(h, detail::axpy(c, 0.5 * step, k1), rv);
        const Coords6 k3 = detail::vector_field_at(h, detail::axpy(c, 0.5 * step, k2), rv);
        const Coords6 k4 = detail::vector_field_at(h, detail::axpy(c, step, k3), rv);
        Coords6 next{};
        for (std::size_t j = 0; j < 6; ++j)
            next[j] = c[j] + step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        p = ProductPoint::from_coords(next);
    }
    return p;
}

/// The involution (x1, y1, z1, x2, y2, z2) -> (-x1, y1, -z1, x2, -y2, -z2).
inline ProductPoint psi(const ProductPoint& p) {
    return {p.p1.reflected(-1, 1, -1), p.p2.reflected(1, -1, -1)};
}

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Uniform point on S^2 from a normalized Gaussian triple.
inline SpherePoint random_sphere_point(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        if (v.norm() > 1e-12) return SpherePoint(v);
    }
}

inline ProductPoint random_product_point(std::mt19937_64& rng) {
    SpherePoint a = random_sphere_point(rng);
    SpherePoint b = random_sphere_point(rng);
    return {a, b};
}

inline double sphere_residual(const SpherePoint& p) {
    return std::abs(p.vec().dot(p.vec()) - 1.0);
}

}  // namespace camlab
