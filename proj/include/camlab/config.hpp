#pragma once

// Run configuration shared by the command-line tool and its tests.
//
// Parameters arrive as decimal strings through grid specs:
//   name=start:stop:count    evenly spaced, endpoints included
//   name=v1,v2,...           explicit list (a single value is a list of one)
//   name=                    empty list

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "camlab/errors.hpp"
#include "camlab/sphere.hpp"

namespace camlab {

struct GridAxis {
    std::string name;
    std::string spec;            // the text after '=' exactly as given
    std::vector<double> values;
};

namespace detail {

inline double parse_decimal(const std::string& tok, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v))
        throw DomainError("grid spec '" + context + "': '" + tok + "' is not a finite decimal number");
    return v;
}

}  // namespace detail

inline GridAxis parse_grid_spec(std::string_view text) {
    const std::string ctx(text);
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw DomainError("grid spec '" + ctx + "': expected name=start:stop:count or name=v1,v2,...");
    GridAxis g;
    g.name = std::string(text.substr(0, eq));
    g.spec = std::string(text.substr(eq + 1));
    if (g.spec.empty()) return g;

    if (g.spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (;;) {
            const auto pos = g.spec.find(':', start);
            parts.push_back(g.spec.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (parts.size() != 3) throw DomainError("grid spec '" + ctx + "': range form is start:stop:count");
        const double a = detail::parse_decimal(parts[0], ctx);
        const double b = detail::parse_decimal(parts[1], ctx);
        char* end = nullptr;
        const long n = std::strtol(parts[2].c_str(), &end, 10);
        if (parts[2].empty() || *end != '\0' || n < 1 || n > 1000000)
            throw DomainError("grid spec '" + ctx + "': count must be an integer in [1, 1000000]");
        if (n == 1) {
            g.values.push_back(a);
        } else {
            for (long i = 0; i < n; ++i)
                g.values.push_back(i == n - 1 ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
    } else {
        std::size_t start = 0;
        for (;;) {
            const auto pos = g.spec.find(',', start);
            g.values.push_back(detail::parse_decimal(
                g.spec.substr(start, pos == std::string::npos ? std::string::npos : pos - start), ctx));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
    }
    return g;
}

struct RunConfig {
    std::string subcommand;
    std::map<std::string, GridAxis> params;
    std::string out_dir;
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-12;
    std::string f_spec;
    std::string preset;

    /// Parses `specs`, rejecting names outside `allowed` and repeats.
    void load(const std::vector<std::string>& specs, const std::set<std::string>& allowed) {
        for (const auto& s : specs) {
            GridAxis g = parse_grid_spec(s);
            if (!allowed.count(g.name)) {
                std::string names;
                for (const auto& a : allowed) names += (names.empty() ? "" : ", ") + a;
                throw DomainError("unknown parameter '" + g.name + "' for '" + subcommand + "' (accepted: " +
                                  (names.empty() ? "none" : names) + ")");
            }
            if (params.count(g.name)) throw DomainError("parameter '" + g.name + "' given twice");
            params.emplace(g.name, std::move(g));
        }
    }

    /// Values of `name`, or the parsed default spec when absent.
    std::vector<double> grid(const std::string& name, const std::string& fallback) {
        auto it = params.find(name);
        if (it == params.end()) it = params.emplace(name, parse_grid_spec(name + "=" + fallback)).first;
        return it->second.values;
    }

    double scalar(const std::string& name, const std::string& fallback) {
        const auto v = grid(name, fallback);
        if (v.size() != 1) throw DomainError("parameter '" + name + "' takes a single value");
        return v.front();
    }

    int count(const std::string& name, const std::string& fallback) {
        const double v = scalar(name, fallback);
        if (!(v >= 0.0 && v <= 1e7 && v == std::floor(v)))
            throw DomainError("parameter '" + name + "' must be a non-negative integer");
        return static_cast<int>(v);
    }
};

}  // namespace camlab
