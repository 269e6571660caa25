#pragma once

// Subcommands of the command-line tool, as library functions returning a
// report bundle. Each command declares the parameter names it accepts and
// their defaults; anything else is rejected by RunConfig::load.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "camlab/config.hpp"
#include "camlab/displaceability.hpp"
#include "camlab/quasi_state.hpp"
#include "camlab/report.hpp"

namespace camlab::commands {

using report::Bundle;
using report::Json;
using report::num;
using report::Table;

namespace cite_qs {
inline constexpr const char* kTwoPoint = "two-point-averaged-state";
inline constexpr const char* kGenus2 = "genus-two-averaged-state";
}  // namespace cite_qs

inline constexpr const char* kDefaultCoupling = "0.5*z1*z2";

namespace detail {

inline CouplingFunction coupling(RunConfig& cfg, const char* fallback) {
    if (cfg.f_spec.empty()) cfg.f_spec = fallback;
    return CouplingFunction::parse(cfg.f_spec);
}

inline const char* audit(bool first, double prev_x, double x, double prev_y, double y) {
    if (first) return "first";
    if (!(x > prev_x)) return "unordered";
    return y < prev_y ? "decreasing" : "VIOLATION";
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Bundle cmd_area(RunConfig& cfg) {
    Bundle out("area");
    Table t{"areas", {"s", "b", "area", "error", "evaluations", "status", "monotone"}, {}};
    bool monotone = true;
    std::size_t domain_errors = 0;
    for (double s : cfg.grid("s", "1")) {
        bool first = true;
        double prev_b = 0.0, prev_a = 0.0;
        for (double b : cfg.grid("b", "-1:0:5")) {
            if (!(s >= 0.0 && s <= 1.0 && b >= -s && b <= 0.0)) {
                t.add({s, b, nullptr, nullptr, nullptr,
                       "domain: (s, b) outside the triangle 0 <= s <= 1, -s <= b <= 0", "n/a"});
                ++domain_errors;
                continue;
            }
            const AreaResult r = area(s, b, cfg.tol);
            const char* m = detail::audit(first, prev_b, b, prev_a, r.value);
            monotone = monotone && std::string(m) != "VIOLATION";
            t.add({s, b, r.value, r.estimated_error, r.evaluations, b == -s ? "closed form" : "ok", m});
            first = false;
            prev_b = b;
            prev_a = r.value;
        }
    }
    out.result() = {{"rows", t.rows.size()}, {"domain_errors", domain_errors}, {"monotone", monotone}};
    out.add_table(std::move(t));
    return out;
}

inline Bundle cmd_sc(RunConfig& cfg) {
    Bundle out("sc");
    Table t{"sc", {"c", "area_1_c", "s_c", "monotone"}, {}};
    bool monotone = true;
    bool first = true;
    double prev_c = 0.0, prev_s = 0.0;
    for (double c : cfg.grid("c", "-1:-0.5:11")) {
        const double s = s_of_c(c, cfg.tol);
        const double a = area(1.0, c, cfg.tol).value;
        const char* m = detail::audit(first, prev_c, c, prev_s, s);
        monotone = monotone && std::string(m) != "VIOLATION";
        t.add({c, a, s, m});
        first = false;
        prev_c = c;
        prev_s = s;
    }
    const double s_lo = s_of_c(-1.0, cfg.tol);
    const double s_hi = s_of_c(-0.5, cfg.tol);
    Json endpoints = Json::array();
    endpoints.push_back({{"c", -1.0}, {"s_c", s_lo}, {"expected", 1.0}, {"tolerance", 1e-9},
                         {"pass", std::abs(s_lo - 1.0) <= 1e-9}});
    endpoints.push_back({{"c", -0.5}, {"s_c", s_hi}, {"expected", 0.0}, {"tolerance", 1e-6},
                         {"pass", std::abs(s_hi) <= 1e-6}});
    out.result() = {{"endpoints", endpoints}, {"monotone_decreasing", monotone}};
    out.add_table(std::move(t));
    return out;
}

inline Bundle cmd_bd(RunConfig& cfg) {
    Bundle out("bd");
    Table t{"bd", {"c", "s_c", "d", "b", "residual", "iterations", "status"}, {}};
    double worst = 0.0;
    std::size_t defined = 0;
    for (double c : cfg.grid("c", "-1:-0.5:5")) {
        const double s = s_of_c(c, cfg.tol);
        for (double d : cfg.grid("d", "-1:-0.5:5")) {
            try {
                const RootResult r = b_of_d(s, d, cfg.tol);
                t.add({c, s, d, r.root, r.residual, r.iterations, "ok"});
                worst = std::max(worst, r.residual);
                ++defined;
            } catch (const DomainError& e) {
                t.add({c, s, d, nullptr, nullptr, nullptr, std::string("undefined: ") + e.what()});
            }
        }
    }
    out.result() = {{"defined", defined}, {"max_residual", worst}};
    out.add_table(std::move(t));
    return out;
}

inline Bundle cmd_window(RunConfig& cfg) {
    Bundle out("window");
    const SymplecticWeight r{cfg.scalar("R", "1")};
    const CouplingFunction f = detail::coupling(cfg, kDefaultCoupling);
    const DisplacementWindow w = window(r, f);
    const Verdict stem = stem_check(r, f);
    out.cite(cite::kPsiWindow);
    out.cite(stem.citation);
    Table t{"F", {"z", "F"}, {}};
    const int n = cfg.count("points", "201");
    for (int i = 0; i < n; ++i) {
        const double z = n == 1 ? 0.0 : -w.z_limit + 2.0 * w.z_limit * i / (n - 1);
        t.add({z, F_Rf(r, f, z)});
    }
    out.result() = {{"R", r.value()},
                    {"f", f.name()},
                    {"linf", report::to_json(f.linf())},
                    {"window", report::to_json(w)},
                    {"stem", report::to_json(stem)}};
    out.add_table(std::move(t));
    return out;
}

inline Bundle cmd_displace(RunConfig& cfg) {
    Bundle out("displace");
    const SymplecticWeight r{cfg.scalar("R", "1")};
    const CouplingFunction f = detail::coupling(cfg, kDefaultCoupling);
    const double a = cfg.scalar("a", "0");
    const double b = cfg.scalar("b", "0.25");
    const Verdict v = displaceable(r, f, a, b, cfg.count("n", "1000"));
    out.cite(v.citation);
    out.result() = {{"R", r.value()}, {"f", f.name()}, {"a", a}, {"b", b}, {"verdict", report::to_json(v)}};
    return out;
}

inline Bundle cmd_sweep(RunConfig& cfg) {
    Bundle out("sweep");
    const SymplecticWeight r{cfg.scalar("R", "1")};
    const CouplingFunction f = detail::coupling(cfg, kDefaultCoupling);
    const auto as = cfg.grid("a", "-1:1:11");
    const auto bs = cfg.grid("b", "-1:0.5:16");
    const int n = cfg.count("n", "0");
    const DisplacementWindow w = window(r, f);
    const Verdict stem = stem_check(r, f);
    out.cite(cite::kPsiWindow);
    out.cite(stem.citation);

    Table t{"verdicts", {"a", "b", "tag", "margin"}, {}};
    Json tags = Json::array();
    Json unknown = Json::array();
    bool consistent = true;
    for (double a : as) {
        Json col = Json::array();
        for (double b : bs) {
            const Verdict v = displaceable(r, f, a, b, n);
            if (v.empirical) consistent = consistent && v.empirical->consistent;
            t.add({a, b, to_string(v.tag), num(v.margin)});
            col.push_back(to_string(v.tag));
            if (v.tag == VerdictTag::InsideWindowUnknown) unknown.push_back(Json::array({a, b}));
        }
        tags.push_back(std::move(col));
    }
    Json result = {{"R", r.value()},       {"f", f.name()},
                   {"window", report::to_json(w)}, {"unknown_cells", unknown},
                   {"stem", report::to_json(stem)}};
    if (n > 0) result["empirical_consistent"] = consistent;
    out.result() = std::move(result);
    out.add_table(std::move(t));
    out.add_figure("map", {{"kind", "verdict_map"},
                           {"title", "verdicts for R = " + camlab::detail::fmt_num(r.value()) + ", f = " + f.name()},
                           {"a", as},
                           {"b", bs},
                           {"tags", tags},
                           {"palette", report::verdict_palette()}});
    return out;
}

inline Bundle cmd_fiber(RunConfig& cfg) {
    Bundle out("fiber");
    const double s = cfg.scalar("s", "0.5");
    const double b = cfg.scalar("b", "-0.25");
    const FiberClass cls = classify_fiber(s, b);
    const FiberSample fs = fiber_sample(s, b, cfg.count("n_theta", "64"), cfg.count("n_phase", "8"));
    Table t{"points", {"x1", "y1", "z1", "x2", "y2", "z2", "J", "H"}, {}};
    for (const auto& p : fs.points)
        t.add({p.p1.x(), p.p1.y(), p.p1.z(), p.p2.x(), p.p2.y(), p.p2.z(), eval_J(SymplecticWeight{1.0}, p),
               eval_Hs(s, p)});
    out.result() = {{"s", s},
                    {"b", b},
                    {"topology", to_string(cls.topology)},
                    {"reason", cls.reason},
                    {"samples", fs.points.size()},
                    {"residual", fs.residual}};
    out.add_table(std::move(t));
    return out;
}

inline Bundle cmd_classify(RunConfig& cfg) {
    Bundle out("classify");
    Table t{"topology", {"s", "b", "topology", "reason"}, {}};
    for (double s : cfg.grid("s", "0,0.5,1"))
        for (double b : cfg.grid("b", "-1:0:5")) {
            const FiberClass c = classify_fiber(s, b);
            t.add({s, b, to_string(c.topology), c.reason});
        }
    out.result() = {{"rows", t.rows.size()}};
    out.add_table(std::move(t));
    return out;
}

inline Bundle cmd_plot_annulus(RunConfig& cfg) {
    Bundle out("plot-annulus");
    const double s = cfg.scalar("s", "0.5");
    const auto bs = cfg.grid("b", "-0.45,-0.3,-0.15,0");
    for (double b : bs)
        if (!(b >= -s && b <= 0.0))
            throw DomainError("plot-annulus: b = " + camlab::detail::fmt_num(b) + " is outside [-s, 0]");
    Json fig = report::annulus_figure(s, bs, cfg.count("points", "200"));
    out.result() = {{"s", s}, {"pinched_theta", std::acos(-s)}, {"curves", fig.at("curves").size()}};
    out.add_figure("annulus", std::move(fig));
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-states

namespace detail {

struct QsCase {
    std::string label;
    Region K;
};

inline Json tag_row(const HeavinessReport& r) {
    return {{"heavy", r.heavy.holds}, {"superheavy", r.superheavy.holds}, {"pseudoheavy", r.pseudoheavy.holds}};
}

inline void qs_tables(Bundle& out, const QuasiState& z, const std::vector<QsCase>& taus,
                      const std::vector<QsCase>& heavies, std::uint64_t seed, Json& tags) {
    Table tt{"tau", {"K", "region", "tau", "brute_force", "analytic"}, {}};
    std::vector<Region> ks;
    for (const auto& c : taus) {
        const QuasiMeasureValue q = tau(z, c.K);
        tt.add({c.label, c.K.to_string(), q.value, q.brute_force, q.analytic});
        ks.push_back(c.K);
    }
    Table ht{"heaviness", {"K", "region", "heavy", "superheavy", "pseudoheavy", "heavy_evidence", "zeta", "bound"}, {}};
    Json reports = Json::object();
    for (const auto& c : heavies) {
        const HeavinessReport r = heaviness_report(z, c.K, seed);
        ht.add({c.label, c.K.to_string(), r.heavy.holds, r.superheavy.holds, r.pseudoheavy.holds, r.heavy.evidence,
                num(r.heavy.zeta), num(r.heavy.bound)});
        reports[c.label] = report::to_json(r);
        tags[c.label] = tag_row(r);
    }
    out.result()["heaviness"] = std::move(reports);
    out.result()["simplicity"] = report::to_json(simplicity_scan(z, ks));
    out.add_table(std::move(tt));
    out.add_table(std::move(ht));
}

inline bool tags_are(const Json& t, bool heavy, bool superheavy, bool pseudoheavy) {
    return t.at("heavy") == heavy && t.at("superheavy") == superheavy && t.at("pseudoheavy") == pseudoheavy;
}

}  // namespace detail

inline Bundle cmd_qs(RunConfig& cfg) {
    Bundle out("qs");
    if (cfg.preset.empty()) cfg.preset = "default";
    const std::size_t n = static_cast<std::size_t>(cfg.count("n", "200"));
    Json tags = Json::object();

    if (cfg.preset == "default") {
        const Point y1{0.0, -0.5}, y2{0.0, -1.0};
        const QuasiState z = QuasiState::averaged(y1, y2);
        const MomentSystem sys{SymplecticWeight{1.0}, CouplingFunction::s_family(1.0)};
        std::vector<Pullback> family;
        for (const auto& p : generate_family(2, n, cfg.seed, {-2.0, -1.0}, {2.0, 1.0}))
            family.push_back({base_tag(sys), sys, p});
        std::vector<Point> image;
        for (const auto& v : moment_image(sys, 2000).values) image.push_back({v.a, v.b});
        AxiomOptions opt;
        opt.seed = cfg.seed;
        opt.displaceable_supports = psi_displaced_bumps({{0.6, 0.0}, {-0.8, -0.3}, {1.2, 0.4}}, 0.1);
        out.result()["state"] = z.name();
        out.result()["supports"] = Json::array({y1, y2});
        out.result()["axioms"] = report::to_json(axiom_suite(z, family, image, opt));

        const Region both = Region::points({y1, y2});
        detail::qs_tables(out, z,
                          {{"fiber(0,-1/2)", Region::point(y1)},
                           {"fiber(0,-1)", Region::point(y2)},
                           {"union", both},
                           {"disjoint(0.5,0)", Region::point({0.5, 0.0})}},
                          {{"union", both}, {"fiber(0,-1/2)", Region::point(y1)}, {"fiber(0,-1)", Region::point(y2)}},
                          cfg.seed, tags);
        const bool ok = detail::tags_are(tags["union"], true, true, true) &&
                        detail::tags_are(tags["fiber(0,-1/2)"], false, false, true) &&
                        detail::tags_are(tags["fiber(0,-1)"], false, false, true);
        out.result()["expected_tags"] = "union superheavy; each fiber pseudoheavy; no fiber heavy";
        out.result()["reproduced"] = ok;
        out.cite(cite_qs::kTwoPoint);
    } else if (cfg.preset == "genus2") {
        const Genus2Preset preset;
        const QuasiState z = genus2_instance(preset.c3, preset.c4);
        std::vector<Pullback> family;
        for (const auto& p : generate_family(1, n, cfg.seed, {0.0}, {7.0})) family.push_back({"F_P", std::nullopt, p});
        std::vector<Point> image;
        for (int i = 0; i <= 500; ++i) image.push_back({1.0 + 5.0 * i / 500.0});
        AxiomOptions opt;
        opt.seed = cfg.seed;
        out.result()["state"] = z.name();
        out.result()["critical_values"] = preset.critical_values;
        out.result()["c3"] = preset.c3;
        out.result()["c4"] = preset.c4;
        out.result()["axioms"] = report::to_json(axiom_suite(z, family, image, opt));

        std::vector<detail::QsCase> levels;
        for (double c : preset.critical_values)
            levels.push_back({"level(" + camlab::detail::fmt_num(c) + ")", Region::point({c})});
        auto heavies = levels;
        heavies.push_back({"union(c3,c4)", Region::points({{preset.c3}, {preset.c4}})});
        auto taus = heavies;
        detail::qs_tables(out, z, taus, heavies, cfg.seed, tags);

        bool ok = detail::tags_are(tags["union(c3,c4)"], true, true, true);
        for (double c : preset.critical_values) {
            const Json& t = tags["level(" + camlab::detail::fmt_num(c) + ")"];
            const bool charged = c == preset.c3 || c == preset.c4;
            ok = ok && detail::tags_are(t, false, false, charged);
        }
        out.result()["expected_tags"] = "c3 and c4 levels pseudoheavy; no level heavy; their union superheavy";
        out.result()["reproduced"] = ok;
        out.cite(cite_qs::kGenus2);
    } else {
        throw DomainError("qs: unknown preset '" + cfg.preset + "' (accepted: default, genus2)");
    }
    out.result()["tags"] = tags;
    return out;
}

inline Bundle cmd_separation(RunConfig& cfg) {
    Bundle out("separation");
    const CouplingFunction f = detail::coupling(cfg, "0.2*z1*z2");
    const SeparationReport r = two_fiber_separation(f, cfg.count("n_theta", "200"), cfg.count("n_phase", "16"));
    out.cite(cite::kTwoFiber);
    const AlephBracket ab = aleph_bracket();
    out.cite(ab.high_key);
    out.result() = {{"separation", report::to_json(r)},
                    {"aleph_bracket", {{"low", ab.low}, {"high", ab.high}, {"low_key", ab.low_key},
                                       {"high_key", ab.high_key}}}};
    return out;
}

// ---------------------------------------------------------------------------
// Registry

struct Command {
    std::string name;
    std::string help;
    std::set<std::string> keys;
    bool uses_f = false;
    bool uses_preset = false;
    std::function<Bundle(RunConfig&)> run;
};

inline const std::vector<Command>& registry() {
    static const std::vector<Command> cmds{
        {"area", "disk areas over s and b grids", {"s", "b"}, false, false, cmd_area},
        {"sc", "s_c over a c grid, with endpoint checks", {"c"}, false, false, cmd_sc},
        {"bd", "b_d roots over c and d grids", {"c", "d"}, false, false, cmd_bd},
        {"window", "displacement window and stem check for (R, f)", {"R", "points"}, true, false, cmd_window},
        {"displace", "verdict for one fiber (a, b)", {"R", "a", "b", "n"}, true, false, cmd_displace},
        {"sweep", "verdict map over a and b grids", {"R", "a", "b", "n"}, true, false, cmd_sweep},
        {"fiber", "lifted samples of a fiber of (J_1, H^s)", {"s", "b", "n_theta", "n_phase"}, false, false, cmd_fiber},
        {"classify", "fiber topology over s and b grids", {"s", "b"}, false, false, cmd_classify},
        {"plot-annulus", "reduced annulus with level curves", {"s", "b", "points"}, false, false, cmd_plot_annulus},
        {"qs", "quasi-state axioms, tau table and heaviness tags", {"n"}, false, true, cmd_qs},
        {"separation", "two-fiber separation for a small coupling", {"n_theta", "n_phase"}, true, false, cmd_separation},
    };
    return cmds;
}

inline const Command& find(const std::string& name) {
    for (const auto& c : registry())
        if (c.name == name) return c;
    throw DomainError("unknown subcommand '" + name + "'");
}

/// Validates the raw grid specs against the command, then runs it.
inline Bundle run(const Command& cmd, RunConfig& cfg, const std::vector<std::string>& grid_specs) {
    cfg.subcommand = cmd.name;
    if (!cmd.uses_f && !cfg.f_spec.empty()) throw DomainError("'" + cmd.name + "' does not take --f-spec");
    if (!cmd.uses_preset && !cfg.preset.empty()) throw DomainError("'" + cmd.name + "' does not take --preset");
    if (!(cfg.tol > 0.0)) throw DomainError("--tol must be positive");
    cfg.load(grid_specs, cmd.keys);
    Bundle b = cmd.run(cfg);
    b.set_config(cfg);
    return b;
}

/// The fixed set of runs behind report-all, as (file label, command, preset, f-spec).
struct Job {
    std::string label, command, preset, f_spec;
};

inline std::vector<Job> report_all_jobs() {
    return {{"area", "area", "", ""},
            {"sc", "sc", "", ""},
            {"bd", "bd", "", ""},
            {"window", "window", "", ""},
            {"sweep", "sweep", "", ""},
            {"sweep-stem", "sweep", "", "z1*z2"},
            {"classify", "classify", "", ""},
            {"plot-annulus", "plot-annulus", "", ""},
            {"qs", "qs", "default", ""},
            {"qs-genus2", "qs", "genus2", ""},
            {"separation", "separation", "", ""}};
}

}  // namespace camlab::commands
