#pragma once

// Report bundles: one JSON document per run, CSV tables and SVG figures
// derived from it. Figures are rendered only from their JSON spec, so the
// JSON alone reproduces every artifact.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "camlab/config.hpp"
#include "camlab/displaceability.hpp"
#include "camlab/quasi_state.hpp"

#ifndef CAMLAB_VERSION
#define CAMLAB_VERSION "1.0.0"
#endif

namespace camlab::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "camlab";
inline constexpr const char* kToolVersion = CAMLAB_VERSION;
inline constexpr const char* kRoundingNote =
    "decimal parameters are parsed with strtod, rounding to the nearest binary64 value; "
    "numbers are written in shortest round-trip form (JSON) or with 17 significant digits (CSV)";

/// Finite doubles as numbers (negative zero as zero), non-finite ones as null.
inline Json num(double v) { return std::isfinite(v) ? Json(v + 0.0) : Json(nullptr); }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;

    void add(std::vector<Json> row) {
        if (row.size() != columns.size())
            throw DomainError("table '" + name + "': row has " + std::to_string(row.size()) + " cells, expected " +
                              std::to_string(columns.size()));
        rows.push_back(std::move(row));
    }

    Json to_json() const {
        Json j;
        j["columns"] = columns;
        j["rows"] = Json::array();
        for (const auto& r : rows) j["rows"].push_back(r);
        return j;
    }
};

namespace detail {

inline std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) return camlab::detail::fmt_num(v.get<double>());
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

inline std::string fixed(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace detail

/// Rebuilds a CSV table from its JSON form.
inline std::string to_csv(const Json& table) {
    std::string out;
    const auto& cols = table.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + detail::csv_cell(cols[i]);
    out += "\n";
    for (const auto& row : table.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + detail::csv_cell(row[i]);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Figures

namespace detail {

struct Frame {
    double width = 640, height = 400, margin = 50;
    double x0, x1, y0, y1;
    double px(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
    double py(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

inline std::string svg_open(const Frame& f) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(f.width, 0) + "\" height=\"" +
           fixed(f.height, 0) + "\" viewBox=\"0 0 " + fixed(f.width, 0) + " " + fixed(f.height, 0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n"
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline std::string text(double x, double y, const std::string& s, const char* anchor = "middle") {
    return "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

inline std::string line(double x1, double y1, double x2, double y2, const std::string& style) {
    return "<line x1=\"" + fixed(x1) + "\" y1=\"" + fixed(y1) + "\" x2=\"" + fixed(x2) + "\" y2=\"" + fixed(y2) +
           "\" " + style + "/>\n";
}

inline std::string render_annulus(const Json& spec) {
    Frame f;
    f.x0 = -std::numbers::pi;
    f.x1 = std::numbers::pi;
    f.y0 = -1.0;
    f.y1 = 1.0;
    std::string out = svg_open(f);
    const double s = spec.at("s").get<double>();
    const auto& shade = spec.at("shaded");
    const double lo = shade.at("theta_lo").get<double>();
    const double hi = shade.at("theta_hi").get<double>();
    out += "<rect x=\"" + fixed(f.px(lo)) + "\" y=\"" + fixed(f.py(1.0)) + "\" width=\"" + fixed(f.px(hi) - f.px(lo)) +
           "\" height=\"" + fixed(f.py(-1.0) - f.py(1.0)) + "\" fill=\"#9ecae1\" fill-opacity=\"0.6\"/>\n";
    out += "<rect x=\"" + fixed(f.px(f.x0)) + "\" y=\"" + fixed(f.py(1.0)) + "\" width=\"" +
           fixed(f.px(f.x1) - f.px(f.x0)) + "\" height=\"" + fixed(f.py(-1.0) - f.py(1.0)) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& t : spec.at("pinched_lines"))
        out += line(f.px(t.get<double>()), f.py(-1.0), f.px(t.get<double>()), f.py(1.0),
                    "stroke=\"#08519c\" stroke-width=\"2\"");
    for (const auto& c : spec.at("curves")) {
        std::string pts;
        for (const auto& p : c.at("points"))
            pts += (pts.empty() ? "" : " ") + fixed(f.px(p[0].get<double>())) + "," + fixed(f.py(p[1].get<double>()));
        out += "<polygon points=\"" + pts + "\" fill=\"none\" stroke=\"#d95f02\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& m : spec.at("markers"))
        out += "<circle cx=\"" + fixed(f.px(m.at("theta").get<double>())) + "\" cy=\"" +
               fixed(f.py(m.at("z").get<double>())) + "\" r=\"3\" fill=\"black\"/>\n";
    out += text(f.width / 2, f.height - 15, "theta");
    out += text(18, f.height / 2, "z");
    out += text(f.px(f.x0), f.height - f.margin + 15, "-pi");
    out += text(f.px(0.0), f.height - f.margin + 15, "0");
    out += text(f.px(f.x1), f.height - f.margin + 15, "pi");
    out += text(f.margin - 8, f.py(1.0) + 4, "1", "end");
    out += text(f.margin - 8, f.py(-1.0) + 4, "-1", "end");
    out += text(f.width / 2, 25, "s = " + camlab::detail::fmt_num(s));
    return out + "</svg>\n";
}

inline std::string render_verdict_map(const Json& spec) {
    const auto& as = spec.at("a");
    const auto& bs = spec.at("b");
    const auto& tags = spec.at("tags");
    const auto& palette = spec.at("palette");
    Frame f;
    f.width = 720;
    f.height = 480;
    f.margin = 60;
    const double cw = (f.width - 2 * f.margin - 160) / static_cast<double>(std::max<std::size_t>(1, as.size()));
    const double ch = (f.height - 2 * f.margin) / static_cast<double>(std::max<std::size_t>(1, bs.size()));
    std::string out = svg_open(f);
    for (std::size_t i = 0; i < as.size(); ++i)
        for (std::size_t j = 0; j < bs.size(); ++j) {
            const std::string tag = tags[i][j].get<std::string>();
            const std::string color = palette.contains(tag) ? palette.at(tag).get<std::string>() : "#cccccc";
            const double x = f.margin + cw * static_cast<double>(i);
            const double y = f.height - f.margin - ch * static_cast<double>(j + 1);
            out += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" width=\"" + fixed(cw) + "\" height=\"" +
                   fixed(ch) + "\" fill=\"" + color + "\"/>\n";
        }
    if (!as.empty() && !bs.empty()) {
        out += text(f.margin, f.height - f.margin + 15, camlab::detail::fmt_num(as.front().get<double>()));
        out += text(f.margin + cw * static_cast<double>(as.size()), f.height - f.margin + 15,
                    camlab::detail::fmt_num(as.back().get<double>()));
        out += text(f.margin - 6, f.height - f.margin, camlab::detail::fmt_num(bs.front().get<double>()), "end");
        out += text(f.margin - 6, f.margin + 4, camlab::detail::fmt_num(bs.back().get<double>()), "end");
    }
    out += text(f.margin + cw * static_cast<double>(as.size()) / 2, f.height - 20, "a");
    out += text(20, f.height / 2, "b");
    double ly = f.margin;
    for (const auto& [tag, color] : palette.items()) {
        const double lx = f.width - f.margin - 150;
        out += "<rect x=\"" + fixed(lx) + "\" y=\"" + fixed(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
               color.get<std::string>() + "\"/>\n";
        out += text(lx + 18, ly + 10, tag, "start");
        ly += 20;
    }
    out += text(f.width / 2, 25, spec.at("title").get<std::string>());
    return out + "</svg>\n";
}

}  // namespace detail

inline std::string render_svg(const Json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "annulus") return detail::render_annulus(spec);
    if (kind == "verdict_map") return detail::render_verdict_map(spec);
    throw DomainError("unknown figure kind '" + kind + "'");
}

/// Spec for the reduced annulus picture at weight s with curves alpha(s, b).
inline Json annulus_figure(double s, const std::vector<double>& bs, int points_per_curve = 200) {
    camlab::detail::check_s(s, "plot-annulus");
    const double line = std::acos(-s);
    Json j;
    j["kind"] = "annulus";
    j["s"] = s;
    j["pinched_lines"] = Json::array({-line, line});
    j["shaded"] = {{"region", "D(s,-s)"}, {"theta_lo", -line}, {"theta_hi", line}};
    j["curves"] = Json::array();
    j["markers"] = Json::array();
    for (double b : bs) {
        if (b == -s) continue;  // the pinched set is drawn as the two lines
        const ReducedCurve c = curve(s, b, points_per_curve);
        Json cj;
        cj["b"] = b;
        cj["points"] = Json::array();
        for (const auto& q : c.points) cj["points"].push_back(Json::array({q.theta(), q.z()}));
        j["curves"].push_back(std::move(cj));
        const double z0 = std::sqrt((1.0 - b) / (1.0 + s));
        j["markers"].push_back({{"b", b}, {"theta", 0.0}, {"z", z0}});
        j["markers"].push_back({{"b", b}, {"theta", 0.0}, {"z", -z0}});
    }
    return j;
}

inline Json verdict_palette() {
    Json p;
    for (auto t : {VerdictTag::DisplaceableByPsi, VerdictTag::DisplaceableInReduction, VerdictTag::InsideWindowUnknown,
                   VerdictTag::NonDisplaceableCited, VerdictTag::SuperheavyCited, VerdictTag::NotApplicable}) {
        const char* color = "#cccccc";
        switch (t) {
            case VerdictTag::DisplaceableByPsi: color = "#a1d99b"; break;
            case VerdictTag::DisplaceableInReduction: color = "#31a354"; break;
            case VerdictTag::InsideWindowUnknown: color = "#fdae6b"; break;
            case VerdictTag::NonDisplaceableCited: color = "#de2d26"; break;
            case VerdictTag::SuperheavyCited: color = "#756bb1"; break;
            case VerdictTag::NotApplicable: color = "#cccccc"; break;
        }
        p[to_string(t)] = color;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Serializers

inline Json to_json(const Certificate& c) {
    Json j = Json::object();
    for (const auto& [k, v] : c) j[k] = num(v);
    return j;
}

inline Json to_json(const Verdict& v) {
    Json j;
    j["tag"] = to_string(v.tag);
    j["margin"] = num(v.margin);
    j["certificate"] = to_json(v.certificate);
    j["citation"] = v.citation;
    j["note"] = v.note;
    if (v.empirical) {
        const auto& e = *v.empirical;
        j["empirical"] = {{"samples", e.samples},
                          {"fiber_residual", num(e.fiber_residual)},
                          {"min_distance", num(e.min_distance)},
                          {"image_excess", num(e.image_excess)},
                          {"consistent", e.consistent}};
    } else {
        j["empirical"] = nullptr;
    }
    return j;
}

inline Json to_json(const DisplacementWindow& w) {
    return {{"m", num(w.m)},           {"M", num(w.M)},
            {"argmin", num(w.argmin)}, {"argmax", num(w.argmax)},
            {"resolution", w.resolution}, {"z_limit", w.z_limit}};
}

inline Json to_json(const LinfCertificate& c) {
    return {{"bound", c.bound},
            {"grid_max", c.grid_max},
            {"grid_step", c.grid_step},
            {"lipschitz_allowance", c.lipschitz_allowance}};
}

inline Json to_json(const SeparationReport& r) {
    Json j;
    j["f"] = r.f_name;
    j["linf_bound"] = r.linf_bound;
    j["margin"] = num(r.margin);
    j["fibers"] = Json::array();
    for (const auto& f : r.fibers)
        j["fibers"].push_back({{"c", f.c},
                               {"window", Json::array({f.window_lo, f.window_hi})},
                               {"samples", f.samples},
                               {"h_min", f.h_min},
                               {"h_max", f.h_max},
                               {"j_max", f.j_max},
                               {"margin", num(f.margin)},
                               {"inside", f.inside},
                               {"verdict", to_json(f.verdict)}});
    return j;
}

inline Json to_json(const AxiomReport& r) {
    Json j;
    j["state"] = r.state;
    j["all_passed"] = r.all_passed();
    j["axioms"] = Json::array();
    for (const auto& a : r.axioms)
        j["axioms"].push_back({{"axiom", a.axiom},
                               {"passed", a.passed},
                               {"skipped", a.skipped},
                               {"worst", num(a.worst)},
                               {"checks", a.checks},
                               {"detail", a.detail}});
    j["rejected_pairs"] = Json::array();
    for (const auto& p : r.rejected)
        j["rejected_pairs"].push_back({{"i", p.i}, {"j", p.j}, {"bracket", num(p.bracket)}, {"reason", p.reason}});
    return j;
}

inline Json to_json(const QuasiMeasureValue& q) {
    return {{"value", q.value},
            {"eps", q.eps},
            {"brute_force", q.brute_force},
            {"family_size", q.family_size},
            {"analytic", q.analytic},
            {"realizing", q.realizing.describe()}};
}

inline Json to_json(const TagResult& t) {
    Json j;
    j["holds"] = t.holds;
    j["evidence"] = t.evidence;
    j["zeta"] = num(t.zeta);
    j["bound"] = num(t.bound);
    j["tested"] = t.tested;
    j["failed_at"] = t.failed_at;
    j["witness_values"] = Json::array();
    for (double v : t.witness_values) j["witness_values"].push_back(num(v));
    j["profile"] = t.profile ? t.profile->describe() : Json(nullptr);
    return j;
}

inline Json to_json(const HeavinessReport& r) {
    return {{"K", r.K.to_string()},
            {"heavy", to_json(r.heavy)},
            {"superheavy", to_json(r.superheavy)},
            {"pseudoheavy", to_json(r.pseudoheavy)},
            {"class_note", r.class_note}};
}

inline Json to_json(const SimplicityReport& r) {
    Json j;
    j["state"] = r.state;
    j["simple"] = r.simple;
    j["lemma_consistent"] = r.lemma_consistent;
    j["violators"] = r.violators;
    j["entries"] = Json::array();
    for (const auto& e : r.entries)
        j["entries"].push_back(
            {{"K", e.K.to_string()}, {"tau", e.tau}, {"heavy", e.heavy}, {"lemma_consistent", e.lemma_consistent}});
    return j;
}

inline Json to_json(const NphCertificate& c) {
    Json j;
    j["issued"] = c.issued;
    j["refusal"] = c.refusal;
    j["checked_points"] = c.checked_points;
    j["partition_residual"] = c.partition_residual;
    j["terms"] = c.terms;
    j["term_sum"] = c.term_sum;
    j["zeta_H"] = c.zeta_H;
    j["ledger"] = c.ledger;
    return j;
}

// ---------------------------------------------------------------------------
// Bundle

class Bundle {
public:
    explicit Bundle(std::string command) : command_(command), label_(std::move(command)) {
        result_ = Json::object();
    }

    const std::string& command() const { return command_; }
    /// File name stem used by write(); defaults to the command name.
    void set_label(std::string label) { label_ = std::move(label); }

    Json& result() { return result_; }
    void cite(const std::string& key) {
        if (!key.empty()) citations_.insert(key);
    }
    void add_table(Table t) { tables_.push_back(std::move(t)); }
    void add_figure(std::string name, Json spec) { figures_.emplace_back(std::move(name), std::move(spec)); }
    void set_config(const RunConfig& cfg) {
        config_ = Json::object();
        config_["subcommand"] = cfg.subcommand;
        Json params = Json::object();
        for (const auto& [name, g] : cfg.params) params[name] = {{"spec", g.spec}, {"values", g.values}};
        config_["params"] = std::move(params);
        config_["seed"] = cfg.seed;
        config_["tol"] = cfg.tol;
        config_["f_spec"] = cfg.f_spec.empty() ? Json(nullptr) : Json(cfg.f_spec);
        config_["preset"] = cfg.preset.empty() ? Json(nullptr) : Json(cfg.preset);
    }

    Json to_json() const {
        Json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["command"] = command_;
        Json prov;
        prov["tool"] = kToolName;
        prov["version"] = kToolVersion;
        prov["config"] = config_.is_null() ? Json::object() : config_;
        prov["citations"] = Json::array();
        for (const auto& c : citations_) prov["citations"].push_back(c);
        prov["rounding"] = kRoundingNote;
        j["provenance"] = std::move(prov);
        j["result"] = result_;
        Json tables = Json::object();
        for (const auto& t : tables_) tables[t.name] = t.to_json();
        j["tables"] = std::move(tables);
        Json figs = Json::object();
        for (const auto& [name, spec] : figures_) figs[name] = spec;
        j["figures"] = std::move(figs);
        return j;
    }

    /// Writes <label>.json, <label>_<table>.csv and <label>_<figure>.svg into dir.
    /// Returns the paths written, in order.
    std::vector<std::string> write(const std::filesystem::path& dir) const {
        std::filesystem::create_directories(dir);
        std::vector<std::string> written;
        auto put = [&](const std::filesystem::path& p, const std::string& body) {
            std::ofstream os(p, std::ios::binary);
            if (!os) throw DomainError("cannot write " + p.string());
            os << body;
            written.push_back(p.string());
        };
        const Json doc = to_json();
        put(dir / (label_ + ".json"), doc.dump(2) + "\n");
        for (const auto& [name, t] : doc.at("tables").items()) put(dir / (label_ + "_" + name + ".csv"), to_csv(t));
        for (const auto& [name, spec] : doc.at("figures").items()) put(dir / (label_ + "_" + name + ".svg"), render_svg(spec));
        return written;
    }

private:
    std::string command_;
    std::string label_;
    Json config_;
    Json result_;
    std::set<std::string> citations_;
    std::vector<Table> tables_;
    std::vector<std::pair<std::string, Json>> figures_;
};

}  // namespace camlab::report
