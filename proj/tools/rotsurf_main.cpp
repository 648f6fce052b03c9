// Command-line front end: surface meshes, geodesic runs, start-angle sweeps,
// the verification suites, and SVG plots.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "e24/io/commands.hpp"
#include "e24/verify.hpp"

namespace {

int run_check(const std::vector<std::string>& suites, const std::string& out_dir,
              const std::string& variant) {
    using e24::verify::SuiteResult;
    for (const auto& s : suites) {
        bool known = false;
        for (const auto& n : e24::verify::suite_names())
            if (n == s) known = true;
        if (!known) {
            std::cerr << "unknown suite '" << s << "'\n";
            return e24::kExitConfig;
        }
    }
    const std::vector<SuiteResult> results = e24::verify::run_suites(suites);
    nlohmann::ordered_json report;
    report["variant"] = variant.empty() ? "corrected" : variant;
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  ("
                  << r.seconds << " s)\n";
        for (const auto& line : r.details) std::cout << "       " << line << "\n";
        nlohmann::ordered_json jr;
        jr["pass"] = r.pass;
        jr["seconds"] = r.seconds;
        jr["details"] = r.details;
        report[r.name] = jr;
        all_pass = all_pass && r.pass;
    }
    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        std::ofstream((fs::path(out_dir) / "check_report.json").string())
            << report.dump(2) << "\n";
    }
    std::cout << (all_pass ? "all suites passed\n" : "SOME SUITES FAILED\n");
    return all_pass ? e24::kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotational surfaces in the split-signature 4-space: "
                 "curvature, geodesics, conserved quantities"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::string variant_override;
    bool allow_early = false;
    int workers = 4;
    std::vector<std::string> suites;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "run config file");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--variant", variant_override,
                        "formula variant: verbatim|corrected");
    };

    auto* surface = app.add_subcommand("surface", "mesh + curvature summary");
    add_common(surface, true);
    auto* geodesic = app.add_subcommand("geodesic", "integrate one geodesic");
    add_common(geodesic, true);
    geodesic->add_flag("--allow-early", allow_early,
                       "accept early termination");
    auto* sweep = app.add_subcommand("sweep", "grid of geodesic runs");
    add_common(sweep, true);
    sweep->add_option("--workers", workers, "worker threads");
    std::string check_out;
    auto* check = app.add_subcommand("check", "run verification suites");
    check->add_option("--suite", suites, "run only the named suites");
    check->add_option("--out", check_out,
                      "also write check_report.json into this directory");
    check->add_option("--variant", variant_override,
                      "variant echoed into the report (suites always report "
                      "both readings)");
    auto* plot = app.add_subcommand("plot", "drift and orbit SVG charts");
    add_common(plot, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : e24::kExitConfig;
    }

    try {
        if (check->parsed())
            return run_check(suites, check_out, variant_override);

        e24::RunConfig cfg = e24::RunConfig::from_file(config_path);
        if (!variant_override.empty()) {
            if (variant_override == "verbatim")
                cfg.variant = e24::FormulaVariant::Verbatim;
            else if (variant_override == "corrected")
                cfg.variant = e24::FormulaVariant::Corrected;
            else
                throw e24::ConfigError("--variant must be verbatim or corrected");
        }
        if (surface->parsed()) return e24::cmd_surface(cfg, out_dir);
        if (geodesic->parsed())
            return e24::cmd_geodesic(cfg, out_dir, allow_early);
        if (sweep->parsed()) return e24::cmd_sweep(cfg, out_dir, workers);
        if (plot->parsed()) return e24::cmd_plot(cfg, out_dir);
    } catch (const e24::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return e24::kExitConfig;
    } catch (const e24::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
