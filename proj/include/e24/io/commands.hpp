#pragma once

#include <filesystem>
#include <iostream>
#include <string>

#include <json.hpp>

#include "e24/io/config.hpp"
#include "e24/io/emit.hpp"
#include "e24/physics.hpp"
#include "e24/surface.hpp"
#include "e24/sweep.hpp"

// Command implementations behind the CLI subcommands. Each returns the
// process exit code: 0 ok, 2 config failure, 3 widespread frame degeneracy,
// 4 early termination without --allow-early.

namespace e24 {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitEarlyTermination = 4;

namespace detail {

inline std::string out_path(const std::string& out_dir, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

inline ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j;
    j["family"] = family_name(cfg.family);
    j["profile"] = cfg.profile_kind;
    j["arclength_normalized"] = cfg.arclength_normalized;
    j["variant"] =
        cfg.variant == FormulaVariant::Verbatim ? "verbatim" : "corrected";
    j["h"] = cfg.integrate.h;
    j["adaptive"] = cfg.integrate.adaptive;
    j["s_end"] = cfg.s_end;
    return j;
}

}  // namespace detail

/// Mesh CSV over the configured (t, s) grid plus a curvature summary:
/// min/max/mean of K and the worst closed-vs-numeric deviation.
inline int cmd_surface(const RunConfig& cfg, const std::string& out_dir,
                       std::ostream& log = std::cout) {
    const ProfileCurve profile = cfg.make_profile();
    const AnglePath path = cfg.make_path();
    const auto& g = cfg.surface;

    CsvWriter csv({"t", "s", "c1", "c2", "c3", "c4", "K", "H_e3", "H_e4"});
    long total = 0, degenerate = 0;
    Real kmin = 1e300, kmax = -1e300, ksum = 0.0, dev_max = 0.0;
    for (int i = 0; i < g.nt; ++i) {
        const Real t =
            g.nt == 1 ? g.t_min : g.t_min + (g.t_max - g.t_min) * i / (g.nt - 1);
        for (int j = 0; j < g.ns; ++j) {
            const Real s = g.ns == 1
                               ? g.s_min
                               : g.s_min + (g.s_max - g.s_min) * j / (g.ns - 1);
            ++total;
            const Vec4 x = immerse_restricted(cfg.family, profile, path, t, s);
            Real K = std::numeric_limits<Real>::quiet_NaN();
            Real h3 = K, h4 = K;
            try {
                const auto closed =
                    curvature_closed(cfg.family, profile, path, t, s, cfg.variant);
                const auto numeric =
                    curvature_numeric(cfg.family, profile, path, t, s);
                K = closed.K;
                h3 = closed.H_e3;
                h4 = closed.H_e4;
                kmin = std::min(kmin, K);
                kmax = std::max(kmax, K);
                ksum += K;
                dev_max = std::max(dev_max, std::abs(closed.K - numeric.K));
            } catch (const Error&) {
                ++degenerate;
            }
            csv.append({t, s, x.c1, x.c2, x.c3, x.c4, K, h3, h4});
        }
    }
    csv.write_file(detail::out_path(out_dir, cfg.basename + "_mesh.csv"));

    const long valid = total - degenerate;
    log << "grid points: " << total << "  degenerate: " << degenerate << "\n";
    if (valid > 0) {
        log << "K min/max/mean: " << csv_real(kmin) << " " << csv_real(kmax)
            << " " << csv_real(ksum / valid) << "\n";
        log << "max |closed - numeric| K deviation: " << csv_real(dev_max)
            << "\n";
    }
    if (degenerate * 10 > total) {
        log << "error: frame degenerate at more than 10% of grid points (null "
               "tangent direction: a frame denominator fell below tolerance)\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

inline CsvWriter trajectory_csv(const Trajectory& tr) {
    CsvWriter csv({"s", "a", "b", "t", "va", "vb", "vt", "E", "p_a", "p_b",
                   "clairaut1", "clairaut2", "V", "phi", "theta", "l"});
    for (const auto& smp : tr.samples) {
        csv.append({smp.inv.s, smp.state.a, smp.state.b, smp.state.t,
                    smp.state.va, smp.state.vb, smp.state.vt, smp.inv.E,
                    smp.inv.p_a, smp.inv.p_b, smp.inv.clairaut1,
                    smp.inv.clairaut2, smp.inv.V, smp.inv.phi, smp.inv.theta,
                    smp.inv.l});
    }
    return csv;
}

/// Trajectory CSV + JSON with metadata, plus a drift table on the log.
inline int cmd_geodesic(const RunConfig& cfg, const std::string& out_dir,
                        bool allow_early, std::ostream& log = std::cout) {
    const auto metric = cfg.make_metric();
    if (metric.normalization_warning())
        log << "warning: arclength normalization changes the metric (|g_t + 1| up "
               "to "
            << csv_real(metric.normalization_deviation()) << ")\n";
    const GeodesicState st0 = cfg.make_initial_state(metric);
    const Trajectory tr = integrate(metric, st0, cfg.s_end, cfg.integrate);

    trajectory_csv(tr).write_file(
        detail::out_path(out_dir, cfg.basename + "_trajectory.csv"));

    const auto rep = make_energy_report(metric, tr, cfg.variant);
    ordered_json j;
    j["config"] = detail::config_echo(cfg);
    j["termination"] = to_string(tr.reason);
    j["s_reached"] = tr.s_reached;
    j["sample_count"] = tr.samples.size();
    j["samples"] = ordered_json::array();
    for (const auto& smp : tr.samples) {
        ordered_json row;
        row["s"] = smp.inv.s;
        row["a"] = smp.state.a;
        row["b"] = smp.state.b;
        row["t"] = smp.state.t;
        row["va"] = smp.state.va;
        row["vb"] = smp.state.vb;
        row["vt"] = smp.state.vt;
        row["E"] = smp.inv.E;
        row["p_a"] = smp.inv.p_a;
        row["p_b"] = smp.inv.p_b;
        row["clairaut1"] = smp.inv.clairaut1;
        row["clairaut2"] = smp.inv.clairaut2;
        row["V"] = smp.inv.V;
        row["phi"] = smp.inv.phi;
        row["theta"] = smp.inv.theta;
        row["l"] = smp.inv.l;
        j["samples"].push_back(row);
    }
    j["drift"] = {{"E", tr.drift.E},
                  {"p_a", tr.drift.p_a},
                  {"p_b", tr.drift.p_b},
                  {"clairaut1", tr.drift.clairaut1},
                  {"clairaut2", tr.drift.clairaut2}};
    j["energy_report"] = {{"family", rep.family},
                          {"variant", rep.variant},
                          {"E", rep.E_specific},
                          {"l", rep.l_value},
                          {"residual_mean", rep.residual_mean},
                          {"residual_max_drift", rep.residual_max_drift},
                          {"zeroed", rep.zeroed}};
    std::ofstream(detail::out_path(out_dir, cfg.basename + "_trajectory.json"))
        << j.dump(2) << "\n";

    log << "termination: " << to_string(tr.reason)
        << "  s_reached: " << csv_real(tr.s_reached) << "\n";
    log << "max relative drift:\n";
    log << "  E          " << csv_real(tr.drift.E) << "\n";
    log << "  p_a        " << csv_real(tr.drift.p_a) << "\n";
    log << "  p_b        " << csv_real(tr.drift.p_b) << "\n";
    log << "  clairaut1  " << csv_real(tr.drift.clairaut1) << "\n";
    log << "  clairaut2  " << csv_real(tr.drift.clairaut2) << "\n";
    log << "  residual   " << csv_real(rep.residual_max_drift) << "\n";

    if (tr.reason != TerminationReason::Completed && !allow_early) {
        log << "error: early termination (" << to_string(tr.reason)
            << "); rerun with --allow-early to accept\n";
        return kExitEarlyTermination;
    }
    const Real worst = std::max(tr.drift.max_all(), rep.residual_max_drift);
    if (worst > cfg.drift_threshold) {
        log << "error: drift " << csv_real(worst) << " exceeds threshold "
            << csv_real(cfg.drift_threshold) << "\n";
        return 1;
    }
    return kExitOk;
}

/// Summary CSV over the (phi, theta) start-angle grid.
inline int cmd_sweep(const RunConfig& cfg, const std::string& out_dir,
                     int workers, std::ostream& log = std::cout) {
    const auto rows = run_sweep(cfg, workers);
    const std::string text = sweep_csv(rows);
    const std::string path =
        detail::out_path(out_dir, cfg.basename + "_sweep.csv");
    std::ofstream(path, std::ios::binary) << text;
    long completed = 0;
    for (const auto& r : rows)
        if (!r.start_failed && r.reason == TerminationReason::Completed)
            ++completed;
    log << "sweep nodes: " << rows.size() << "  completed: " << completed
        << "  rows written to " << path << "\n";
    return kExitOk;
}

/// Drift-history and orbit-projection SVG charts for one run.
inline int cmd_plot(const RunConfig& cfg, const std::string& out_dir,
                    std::ostream& log = std::cout) {
    const auto metric = cfg.make_metric();
    const GeodesicState st0 = cfg.make_initial_state(metric);
    const Trajectory tr = integrate(metric, st0, cfg.s_end, cfg.integrate);
    if (tr.samples.size() < 2) {
        log << "error: trajectory too short to plot\n";
        return 1;
    }
    const auto& first = tr.samples.front().inv;
    SvgSeries dE{"E deviation", {}}, dPa{"p_a deviation", {}},
        dC1{"clairaut1 deviation", {}};
    SvgSeries orbit{"orbit", {}};
    for (const auto& smp : tr.samples) {
        dE.points.push_back({smp.inv.s, smp.inv.E - first.E});
        dPa.points.push_back({smp.inv.s, smp.inv.p_a - first.p_a});
        dC1.points.push_back({smp.inv.s, smp.inv.clairaut1 - first.clairaut1});
        orbit.points.push_back({smp.state.a, smp.state.b});
    }
    write_svg_chart(detail::out_path(out_dir, cfg.basename + "_drift.svg"),
                    "conserved-quantity deviation vs s", "s", "deviation",
                    {dE, dPa, dC1});
    write_svg_chart(detail::out_path(out_dir, cfg.basename + "_orbit.svg"),
                    "orbit projection onto the angle plane", "a", "b", {orbit});
    log << "wrote " << cfg.basename << "_drift.svg and " << cfg.basename
        << "_orbit.svg\n";
    return kExitOk;
}

}  // namespace e24
