#pragma once

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "e24/geodesic.hpp"
#include "e24/io/config.hpp"
#include "e24/io/emit.hpp"

// Batch runner: one geodesic per (phi, theta) grid node. Nodes are fanned out
// over a worker pool sharing only the read-only configuration; results land
// in a pre-sized vector by grid index, so row order (hence output bytes) is
// independent of scheduling.

namespace e24 {

struct SweepRow {
    int index;
    Real phi, theta;
    Real s_reached;
    GeodesicState final_state;
    DriftStats drift;
    TerminationReason reason;
    bool start_failed = false;
};

inline std::vector<SweepRow> run_sweep(const RunConfig& cfg, int workers) {
    const auto metric = cfg.make_metric();
    const int np = cfg.sweep.phi_count, nt = cfg.sweep.theta_count;
    const int total = np * nt;
    std::vector<SweepRow> rows(static_cast<std::size_t>(total));

    auto node_value = [](Real lo, Real hi, int i, int n) {
        return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1);
    };

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= total) return;
            const int ip = i / nt, it = i % nt;
            SweepRow row;
            row.index = i;
            row.phi = node_value(cfg.sweep.phi_min, cfg.sweep.phi_max, ip, np);
            row.theta =
                node_value(cfg.sweep.theta_min, cfg.sweep.theta_max, it, nt);
            try {
                const GeodesicState st0 =
                    make_unit_speed_state(metric, cfg.init.a0, cfg.init.b0,
                                          cfg.init.t0, row.phi, row.theta);
                const Trajectory tr =
                    integrate(metric, st0, cfg.s_end, cfg.integrate);
                row.s_reached = tr.s_reached;
                row.final_state = tr.samples.back().state;
                row.drift = tr.drift;
                row.reason = tr.reason;
            } catch (const Error&) {
                row.start_failed = true;
                row.s_reached = 0.0;
                row.final_state = {};
                row.reason = TerminationReason::DegenerateMetric;
            }
            rows[static_cast<std::size_t>(i)] = row;
        }
    };

    const int n_workers = std::max(1, workers);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    CsvWriter csv({"index", "phi", "theta", "s_reached", "a", "b", "t", "va",
                   "vb", "vt", "maxdrift_E", "maxdrift_pa", "maxdrift_pb",
                   "maxdrift_clairaut1", "maxdrift_clairaut2", "termination"});
    for (const auto& r : rows) {
        csv.append_mixed({std::to_string(r.index), csv_real(r.phi),
                          csv_real(r.theta), csv_real(r.s_reached),
                          csv_real(r.final_state.a), csv_real(r.final_state.b),
                          csv_real(r.final_state.t), csv_real(r.final_state.va),
                          csv_real(r.final_state.vb), csv_real(r.final_state.vt),
                          csv_real(r.drift.E), csv_real(r.drift.p_a),
                          csv_real(r.drift.p_b), csv_real(r.drift.clairaut1),
                          csv_real(r.drift.clairaut2),
                          r.start_failed ? "start_failed" : to_string(r.reason)});
    }
    return csv.text();
}

}  // namespace e24
