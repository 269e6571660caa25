#pragma once

// Test functions on moment-value space R^k (k = 1 or 2) and closed subsets
// of it. A profile f stands for the pullback f o Phi; quasi-states only ever
// see profiles.
//
// Region text format, shapes joined by ';':
//   point:x[,y]        ball:cx[,cy]:r        box:lo1[,lo2]:hi1[,hi2]

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "camlab/errors.hpp"
#include "json.hpp"

namespace camlab {

using Point = std::vector<double>;

inline double distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

struct Shape {
    enum class Kind { Point, Ball, Box } kind = Kind::Point;
    Point a;         // point, ball centre, or box lower corner
    Point b;         // box upper corner
    double r = 0.0;  // ball radius

    std::size_t dim() const { return a.size(); }

    double dist(const Point& y) const {
        switch (kind) {
            case Kind::Point: return distance(a, y);
            case Kind::Ball: return std::max(0.0, distance(a, y) - r);
            case Kind::Box: {
                double s = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    const double d = std::max({a[i] - y[i], 0.0, y[i] - b[i]});
                    s += d * d;
                }
                return std::sqrt(s);
            }
        }
        return 0.0;
    }
};

namespace detail {

inline std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_point(const Point& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + fmt_num(p[i]);
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

inline double parse_real(const std::string& tok, const std::string& context) {
    const std::string t = trim(tok);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
        throw DomainError("region parse error: bad number '" + t + "' in \"" + context + "\"");
    return v;
}

inline Point parse_point(const std::string& tok, const std::string& context) {
    Point p;
    for (const auto& part : split(tok, ',')) p.push_back(parse_real(part, context));
    if (p.empty() || p.size() > 2)
        throw DomainError("region parse error: expected 1 or 2 coordinates in \"" + context + "\"");
    return p;
}

}  // namespace detail

/// A closed subset of R^k given as a finite union of points, balls and boxes.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<Shape> shapes) : shapes_(std::move(shapes)) { validate(); }

    static Region point(Point y) { return Region({Shape{Shape::Kind::Point, std::move(y), {}, 0.0}}); }
    static Region points(const std::vector<Point>& ys) {
        std::vector<Shape> s;
        for (const auto& y : ys) s.push_back({Shape::Kind::Point, y, {}, 0.0});
        return Region(std::move(s));
    }
    static Region ball(Point c, double r) { return Region({Shape{Shape::Kind::Ball, std::move(c), {}, r}}); }
    static Region box(Point lo, Point hi) { return Region({Shape{Shape::Kind::Box, std::move(lo), std::move(hi), 0.0}}); }

    static Region parse(std::string_view text) {
        const std::string ctx(text);
        std::vector<Shape> shapes;
        for (const auto& raw : detail::split(text, ';')) {
            const std::string item = detail::trim(raw);
            const auto parts = detail::split(item, ':');
            const std::string kind = detail::trim(parts[0]);
            if (kind == "point" && parts.size() == 2) {
                shapes.push_back({Shape::Kind::Point, detail::parse_point(parts[1], ctx), {}, 0.0});
            } else if (kind == "ball" && parts.size() == 3) {
                shapes.push_back({Shape::Kind::Ball, detail::parse_point(parts[1], ctx), {},
                                  detail::parse_real(parts[2], ctx)});
            } else if (kind == "box" && parts.size() == 3) {
                shapes.push_back({Shape::Kind::Box, detail::parse_point(parts[1], ctx),
                                  detail::parse_point(parts[2], ctx), 0.0});
            } else {
                throw DomainError("region parse error: cannot read '" + item + "' in \"" + ctx +
                                  "\" (expected point:x[,y], ball:c[,c]:r or box:lo[,lo]:hi[,hi])");
            }
        }
        return Region(std::move(shapes));
    }

    std::size_t dim() const { return shapes_.empty() ? 0 : shapes_.front().dim(); }
    const std::vector<Shape>& shapes() const { return shapes_; }

    double dist(const Point& y) const {
        check_dim(y);
        double d = INFINITY;
        for (const auto& s : shapes_) d = std::min(d, s.dist(y));
        return d;
    }
    bool contains(const Point& y) const { return dist(y) == 0.0; }

    /// True when the region is a finite set of points.
    bool is_finite() const {
        return std::all_of(shapes_.begin(), shapes_.end(), [](const Shape& s) { return s.kind == Shape::Kind::Point; });
    }

    std::vector<Point> finite_points() const {
        std::vector<Point> out;
        for (const auto& s : shapes_)
            if (s.kind == Shape::Kind::Point) out.push_back(s.a);
        return out;
    }

    /// Canonical text, parseable by parse().
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < shapes_.size(); ++i) {
            const auto& s = shapes_[i];
            if (i) out += ";";
            switch (s.kind) {
                case Shape::Kind::Point: out += "point:" + detail::fmt_point(s.a); break;
                case Shape::Kind::Ball: out += "ball:" + detail::fmt_point(s.a) + ":" + detail::fmt_num(s.r); break;
                case Shape::Kind::Box: out += "box:" + detail::fmt_point(s.a) + ":" + detail::fmt_point(s.b); break;
            }
        }
        return out;
    }

    void check_dim(const Point& y) const {
        if (y.size() != dim())
            throw DomainError("region of dimension " + std::to_string(dim()) + " evaluated at a point of dimension " +
                              std::to_string(y.size()));
    }

private:
    void validate() const {
        if (shapes_.empty()) throw DomainError("region parse error: empty region");
        for (const auto& s : shapes_) {
            if (s.dim() != shapes_.front().dim()) throw DomainError("region parse error: mixed dimensions");
            if (s.kind == Shape::Kind::Ball && !(s.r >= 0.0)) throw DomainError("region parse error: negative radius");
            if (s.kind == Shape::Kind::Box) {
                if (s.b.size() != s.a.size()) throw DomainError("region parse error: box corners differ in dimension");
                for (std::size_t i = 0; i < s.a.size(); ++i)
                    if (!(s.a[i] <= s.b[i])) throw DomainError("region parse error: box has lo > hi");
            }
        }
    }

    std::vector<Shape> shapes_;
};

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 on [0, 1], clamped outside.
inline double smoothstep5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::clamp(t * t * t * (t * (6.0 * t - 15.0) + 10.0), 0.0, 1.0);
}

struct OpenBox {
    Point lo;
    Point hi;

    bool contains(const Point& y) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(y[i] > lo[i] && y[i] < hi[i])) return false;
        return true;
    }

    /// Smooth weight, positive exactly on the open box: product of
    /// exp(-1/u) exp(-1/(1-u)) over the normalized coordinates u.
    double weight(const Point& y) const {
        double w = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double u = (y[i] - lo[i]) / (hi[i] - lo[i]);
            if (!(u > 0.0 && u < 1.0)) return 0.0;
            w *= std::exp(-1.0 / u - 1.0 / (1.0 - u));
        }
        return w;
    }
};

struct PolyTerm {
    double coef = 0.0;
    std::array<int, 2> exp{0, 0};
};

class Profile {
public:
    struct Constant { double value; };
    struct Poly { std::size_t dim; std::vector<PolyTerm> terms; };
    struct Bump { Region plateau; double eps; };
    struct Partition { std::vector<OpenBox> cover; std::size_t index; };
    struct Sum { std::vector<Profile> terms; };
    struct Scale { double factor; std::vector<Profile> of; };
    struct Product { std::vector<Profile> factors; };
    using Node = std::variant<Constant, Poly, Bump, Partition, Sum, Scale, Product>;

    Profile() : Profile(Constant{0.0}) {}

    static Profile constant(double c) { return Profile(Constant{c}); }

    static Profile polynomial(std::size_t dim, std::vector<PolyTerm> terms) {
        if (dim < 1 || dim > 2) throw DomainError("profile: polynomial dimension must be 1 or 2");
        for (const auto& t : terms)
            if (t.exp[0] < 0 || t.exp[1] < 0 || (dim == 1 && t.exp[1] != 0))
                throw DomainError("profile: bad polynomial exponent");
        return Profile(Poly{dim, std::move(terms)});
    }

    /// Equal to 1 on the plateau, 0 at distance >= eps from it, quintic in between.
    static Profile bump(Region plateau, double eps) {
        if (!(eps > 0.0)) throw DomainError("profile: bump width must be positive");
        return Profile(Bump{std::move(plateau), eps});
    }

    /// The i-th function of the partition of unity subordinate to `cover`;
    /// zero where no box has positive weight.
    static Profile partition_element(std::vector<OpenBox> cover, std::size_t i) {
        if (i >= cover.size()) throw DomainError("profile: partition index out of range");
        return Profile(Partition{std::move(cover), i});
    }

    friend Profile operator+(const Profile& a, const Profile& b) { return Profile(Sum{{a, b}}); }
    friend Profile operator*(double s, const Profile& a) { return Profile(Scale{s, {a}}); }
    friend Profile operator*(const Profile& a, const Profile& b) { return Profile(Product{{a, b}}); }
    friend Profile operator-(const Profile& a, const Profile& b) { return a + (-1.0) * b; }

    double operator()(const Point& y) const { return std::visit([&](const auto& n) { return eval(n, y); }, *node_); }

    const Node& node() const { return *node_; }

    nlohmann::ordered_json describe() const {
        using J = nlohmann::ordered_json;
        return std::visit(
            [](const auto& n) -> J {
                using T = std::decay_t<decltype(n)>;
                J j;
                if constexpr (std::is_same_v<T, Constant>) {
                    j["kind"] = "constant";
                    j["value"] = n.value;
                } else if constexpr (std::is_same_v<T, Poly>) {
                    j["kind"] = "polynomial";
                    j["dim"] = n.dim;
                    J terms = J::array();
                    for (const auto& t : n.terms) terms.push_back({{"coef", t.coef}, {"exp", {t.exp[0], t.exp[1]}}});
                    j["terms"] = terms;
                } else if constexpr (std::is_same_v<T, Bump>) {
                    j["kind"] = "bump";
                    j["plateau"] = n.plateau.to_string();
                    j["eps"] = n.eps;
                } else if constexpr (std::is_same_v<T, Partition>) {
                    j["kind"] = "partition";
                    J cover = J::array();
                    for (const auto& b : n.cover) cover.push_back({{"lo", b.lo}, {"hi", b.hi}});
                    j["cover"] = cover;
                    j["index"] = n.index;
                } else if constexpr (std::is_same_v<T, Sum>) {
                    j["kind"] = "sum";
                    j["terms"] = J::array();
                    for (const auto& t : n.terms) j["terms"].push_back(t.describe());
                } else if constexpr (std::is_same_v<T, Scale>) {
                    j["kind"] = "scale";
                    j["factor"] = n.factor;
                    j["of"] = n.of.front().describe();
                } else {
                    j["kind"] = "product";
                    j["factors"] = J::array();
                    for (const auto& t : n.factors) j["factors"].push_back(t.describe());
                }
                return j;
            },
            *node_);
    }

    template <class Json>
    static Profile from_json(const Json& j) {
        const std::string kind = j.at("kind").template get<std::string>();
        if (kind == "constant") return constant(j.at("value").template get<double>());
        if (kind == "polynomial") {
            std::vector<PolyTerm> terms;
            for (const auto& t : j.at("terms"))
                terms.push_back({t.at("coef").template get<double>(),
                                 {t.at("exp").at(0).template get<int>(), t.at("exp").at(1).template get<int>()}});
            return polynomial(j.at("dim").template get<std::size_t>(), std::move(terms));
        }
        if (kind == "bump")
            return bump(Region::parse(j.at("plateau").template get<std::string>()), j.at("eps").template get<double>());
        if (kind == "partition") {
            std::vector<OpenBox> cover;
            for (const auto& b : j.at("cover"))
                cover.push_back({b.at("lo").template get<Point>(), b.at("hi").template get<Point>()});
            return partition_element(std::move(cover), j.at("index").template get<std::size_t>());
        }
        if (kind == "sum") {
            Sum s;
            for (const auto& t : j.at("terms")) s.terms.push_back(from_json(t));
            return Profile(std::move(s));
        }
        if (kind == "scale") return j.at("factor").template get<double>() * from_json(j.at("of"));
        if (kind == "product") {
            Product p;
            for (const auto& t : j.at("factors")) p.factors.push_back(from_json(t));
            return Profile(std::move(p));
        }
        throw DomainError("profile: unknown kind '" + kind + "'");
    }

private:
    explicit Profile(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static double eval(const Constant& c, const Point&) { return c.value; }

    static double eval(const Poly& p, const Point& y) {
        if (y.size() != p.dim) throw DomainError("profile: polynomial evaluated at a point of the wrong dimension");
        double s = 0.0;
        for (const auto& t : p.terms) {
            double m = t.coef;
            for (std::size_t i = 0; i < p.dim; ++i)
                for (int e = 0; e < t.exp[i]; ++e) m *= y[i];
            s += m;
        }
        return s;
    }

    static double eval(const Bump& b, const Point& y) { return 1.0 - smoothstep5(b.plateau.dist(y) / b.eps); }

    static double eval(const Partition& p, const Point& y) {
        double total = 0.0;
        for (const auto& box : p.cover) total += box.weight(y);
        return total > 0.0 ? p.cover[p.index].weight(y) / total : 0.0;
    }

    static double eval(const Sum& s, const Point& y) {
        double v = 0.0;
        for (const auto& t : s.terms) v += t(y);
        return v;
    }

    static double eval(const Scale& s, const Point& y) { return s.factor * s.of.front()(y); }

    static double eval(const Product& p, const Point& y) {
        double v = 1.0;
        for (const auto& t : p.factors) v *= t(y);
        return v;
    }

    std::shared_ptr<const Node> node_;
};

/// Polynomial of total degree <= `degree` with coefficients uniform in [-1, 1].
inline Profile random_polynomial(std::size_t dim, int degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<PolyTerm> terms;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= (dim == 2 ? degree - i : 0); ++j) terms.push_back({coef(rng), {i, j}});
    return Profile::polynomial(dim, std::move(terms));
}

/// Deterministic mixed family over the box [lo, hi]: polynomials up to degree
/// 6, bumps around random points, sums and products of the two.
inline std::vector<Profile> generate_family(std::size_t dim, std::size_t count, std::uint64_t seed, const Point& lo,
                                            const Point& hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 6);
    auto random_point = [&] {
        Point p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
        return p;
    };
    auto random_bump = [&] { return Profile::bump(Region::point(random_point()), 0.05 + unit(rng)); };

    std::vector<Profile> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        switch (k % 4) {
            case 0: out.push_back(random_polynomial(dim, deg(rng), rng)); break;
            case 1: out.push_back((4.0 * unit(rng) - 2.0) * random_bump()); break;
            case 2: out.push_back(random_polynomial(dim, deg(rng) % 4, rng) + random_bump()); break;
            default: out.push_back(random_polynomial(dim, 2, rng) * random_bump()); break;
        }
    }
    return out;
}

}  // namespace camlab
