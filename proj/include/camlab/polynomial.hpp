#pragma once

// Bivariate polynomials in (z1, z2) with a small text format:
//
//   spec   := term { ('+' | '-') term }
//   term   := [number] { ['*'] factor }
//   factor := ('z1' | 'z2') [ '^' integer ]
//
// e.g. "0.2*z1*z2", "z1*z2 + 0.3*z1 - 0.05*z1^2*z2", "-1.5e-1 z1^2".

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "camlab/errors.hpp"

namespace camlab {

struct Monomial {
    double coef = 0.0;
    int p1 = 0;  // power of z1
    int p2 = 0;  // power of z2
};

class Polynomial2 {
public:
    Polynomial2() = default;

    explicit Polynomial2(const std::vector<Monomial>& terms) {
        std::map<std::pair<int, int>, double> acc;
        for (const auto& t : terms) {
            if (t.p1 < 0 || t.p2 < 0) throw DomainError("Polynomial2: negative exponent");
            if (!std::isfinite(t.coef)) throw DomainError("Polynomial2: non-finite coefficient");
            acc[{t.p1, t.p2}] += t.coef;
        }
        for (const auto& [pw, c] : acc)
            if (c != 0.0) terms_.push_back({c, pw.first, pw.second});
    }

    static Polynomial2 parse(std::string_view text);

    double operator()(double z1, double z2) const {
        double sum = 0.0;
        for (const auto& t : terms_) sum += t.coef * ipow(z1, t.p1) * ipow(z2, t.p2);
        return sum;
    }

    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.p1 + t.p2);
        return d;
    }

    /// Lipschitz constants in z1 and z2 on [-1,1]^2.
    std::pair<double, double> lipschitz_on_square() const {
        double l1 = 0.0;
        double l2 = 0.0;
        for (const auto& t : terms_) {
            l1 += std::abs(t.coef) * t.p1;
            l2 += std::abs(t.coef) * t.p2;
        }
        return {l1, l2};
    }

    /// Canonical text (round-trips through parse up to %.17g).
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            const auto& t = terms_[k];
            char buf[64];
            const double mag = std::abs(t.coef);
            if (k == 0)
                std::snprintf(buf, sizeof buf, "%s%.17g", t.coef < 0 ? "-" : "", mag);
            else
                std::snprintf(buf, sizeof buf, " %c %.17g", t.coef < 0 ? '-' : '+', mag);
            out += buf;
            if (t.p1 > 0) out += t.p1 == 1 ? "*z1" : "*z1^" + std::to_string(t.p1);
            if (t.p2 > 0) out += t.p2 == 1 ? "*z2" : "*z2^" + std::to_string(t.p2);
        }
        return out;
    }

    friend Polynomial2 operator+(const Polynomial2& a, const Polynomial2& b) {
        std::vector<Monomial> all = a.terms_;
        all.insert(all.end(), b.terms_.begin(), b.terms_.end());
        return Polynomial2(all);
    }

    friend Polynomial2 operator*(double s, const Polynomial2& a) {
        std::vector<Monomial> all = a.terms_;
        for (auto& t : all) t.coef *= s;
        return Polynomial2(all);
    }

private:
    static double ipow(double x, int n) {
        double r = 1.0;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    }

    std::vector<Monomial> terms_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    Polynomial2 run() {
        std::vector<Monomial> terms;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        terms.push_back(term(sign));
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') fail(std::string("expected '+' or '-', got '") + c + "'");
            ++pos_;
            terms.push_back(term(c == '-' ? -1.0 : 1.0));
        }
        return Polynomial2(terms);
    }

private:
    Monomial term(double sign) {
        skip_ws();
        Monomial m{sign, 0, 0};
        bool have_any = false;
        if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            m.coef *= number();
            have_any = true;
        }
        for (;;) {
            skip_ws();
            if (at_end()) break;
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            } else if (peek() != 'z') {
                break;
            }
            factor(m);
            have_any = true;
        }
        if (!have_any) fail("expected a coefficient or a factor");
        return m;
    }

    void factor(Monomial& m) {
        if (at_end() || peek() != 'z') fail("expected z1 or z2");
        ++pos_;
        if (at_end() || (peek() != '1' && peek() != '2')) fail("expected z1 or z2");
        const bool first = peek() == '1';
        ++pos_;
        int power = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (start == pos_) fail("expected an integer exponent");
            power = std::stoi(std::string(s_.substr(start, pos_ - start)));
        }
        (first ? m.p1 : m.p2) += power;
    }

    double number() {
        const std::string rest(s_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return v;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw DomainError("f-spec parse error at offset " + std::to_string(pos_) + ": " + msg + " in \"" +
                          std::string(s_) + "\"");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial2 Polynomial2::parse(std::string_view text) {
    return detail::PolyParser(text).run();
}

}  // namespace camlab
