#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "camlab/camlab.hpp"

namespace {

struct Options {
    std::string out;
    std::uint64_t seed = camlab::kDefaultSeed;
    double tol = 1e-12;
    std::vector<std::string> grid;
    std::string f_spec;
    std::string preset;
};

camlab::RunConfig make_config(const Options& o) {
    camlab::RunConfig cfg;
    cfg.out_dir = o.out;
    cfg.seed = o.seed;
    cfg.tol = o.tol;
    cfg.f_spec = o.f_spec;
    cfg.preset = o.preset;
    return cfg;
}

void emit(const camlab::report::Bundle& b, const std::string& out) {
    if (out.empty()) {
        std::cout << b.to_json().dump(2) << "\n";
        return;
    }
    for (const auto& p : b.write(out)) std::cout << p << "\n";
}

int report_all(const Options& o) {
    using namespace camlab;
    if (o.out.empty()) throw DomainError("report-all needs --out DIR");
    if (!o.grid.empty() || !o.f_spec.empty() || !o.preset.empty())
        throw DomainError("report-all runs fixed defaults and takes no --grid, --f-spec or --preset");
    report::Json index;
    index["tool"] = report::kToolName;
    index["version"] = report::kToolVersion;
    index["command"] = "report-all";
    index["runs"] = report::Json::array();
    std::set<std::string> citations;
    for (const auto& job : commands::report_all_jobs()) {
        RunConfig cfg = make_config(o);
        cfg.f_spec = job.f_spec;
        cfg.preset = job.preset;
        auto bundle = commands::run(commands::find(job.command), cfg, {});
        bundle.set_label(job.label);
        const auto files = bundle.write(o.out);
        for (const auto& c : bundle.to_json().at("provenance").at("citations")) citations.insert(c.get<std::string>());
        report::Json files_rel = report::Json::array();
        for (const auto& f : files) files_rel.push_back(std::filesystem::path(f).filename().string());
        index["runs"].push_back({{"label", job.label}, {"command", job.command}, {"files", files_rel}});
        for (const auto& f : files) std::cout << f << "\n";
    }
    report::Json prov;
    prov["tool"] = report::kToolName;
    prov["version"] = report::kToolVersion;
    prov["config"] = {{"subcommand", "report-all"}, {"seed", o.seed}, {"tol", o.tol}};
    prov["citations"] = citations;
    prov["rounding"] = report::kRoundingNote;
    index["provenance"] = prov;
    const auto path = std::filesystem::path(o.out) / "report-all.json";
    std::ofstream(path, std::ios::binary) << index.dump(2) << "\n";
    std::cout << path.string() << "\n";
    return camlab::exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace camlab;
    CLI::App app{"Moment maps on S^2 x S^2: areas, displacement windows, quasi-state reports"};
    app.set_version_flag("--version", std::string(report::kToolVersion));
    app.require_subcommand(1);

    Options o;
    app.add_option("--out", o.out, "write JSON, CSV and SVG files into DIR instead of printing JSON");
    app.add_option("--seed", o.seed, "seed for generated families")->capture_default_str();
    app.add_option("--tol", o.tol, "quadrature tolerance")->capture_default_str();
    app.add_option("--grid", o.grid, "parameter grid: name=start:stop:count or name=v1,v2,... (repeatable)");
    app.add_option("--f-spec", o.f_spec, "coupling polynomial in z1, z2, e.g. '0.5*z1*z2'");

    std::string chosen;
    for (const auto& cmd : commands::registry()) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->fallthrough();
        if (cmd.uses_preset) sub->add_option("--preset", o.preset, "default or genus2");
        sub->callback([&chosen, name = cmd.name] { chosen = name; });
    }
    app.add_subcommand("report-all", "run every command with defaults into --out DIR")
        ->fallthrough()
        ->callback([&chosen] { chosen = "report-all"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_code::ok : exit_code::domain;
    }

    try {
        if (chosen == "report-all") return report_all(o);
        RunConfig cfg = make_config(o);
        emit(commands::run(commands::find(chosen), cfg, o.grid), o.out);
        return exit_code::ok;
    } catch (const HypothesisFailure& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return exit_code::hypothesis;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return exit_code::numeric;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_code::domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
