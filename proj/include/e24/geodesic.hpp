#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "e24/clairaut.hpp"
#include "e24/metric.hpp"

// Fixed-step RK4 geodesic integrator with an optional step-doubling adaptive
// mode. Every accepted step updates the conserved-quantity drift monitors;
// sample storage may be decimated independently of the monitors.

namespace e24 {

struct InvariantRecord {
    Real s;
    Real E, p_a, p_b;
    Real clairaut1, clairaut2;
    Real V;
    Real phi, theta;
    Real l;  // specific angular momentum on the orthonormal t-component, -2 u_t
};

enum class TerminationReason { Completed, DegenerateMetric, DomainExit, NonFinite };

inline const char* to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::Completed: return "completed";
        case TerminationReason::DegenerateMetric: return "degenerate_metric";
        case TerminationReason::DomainExit: return "domain_exit";
        case TerminationReason::NonFinite: return "non_finite";
    }
    return "?";
}

struct IntegrateOptions {
    Real h = 1e-3;
    bool adaptive = false;
    Real tol = 1e-10;          // local error tolerance in adaptive mode
    int record_stride = 1;     // store every n-th accepted sample
    Real axis_guard = 1e-2;    // stop before a radius collapses under the step
};

/// Worst relative deviation of each monitored quantity from its initial
/// value, with unit floors on the momentum and product scales.
struct DriftStats {
    Real E = 0.0, p_a = 0.0, p_b = 0.0, clairaut1 = 0.0, clairaut2 = 0.0;

    Real max_all() const {
        return std::max({E, p_a, p_b, clairaut1, clairaut2});
    }
};

struct TrajectorySample {
    GeodesicState state;
    InvariantRecord inv;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    TerminationReason reason = TerminationReason::Completed;
    Real s_reached = 0.0;
    DriftStats drift;
    IntegrateOptions opts;
};

inline InvariantRecord make_invariant_record(const DiagonalMetric3& m,
                                             const GeodesicState& st, Real s) {
    const auto mom = conserved_momenta(m, st);
    const auto cl = clairaut_decompose(m, st);
    const auto u = orthonormal_velocity(m, st);
    InvariantRecord r;
    r.s = s;
    r.E = mom.E;
    r.p_a = mom.p_a;
    r.p_b = mom.p_b;
    r.clairaut1 = cl.clairaut1;
    r.clairaut2 = cl.clairaut2;
    r.V = cl.V;
    r.phi = cl.phi;
    r.theta = cl.theta;
    r.l = -2.0 * u.u_t;
    return r;
}

namespace detail {

inline GeodesicState rk4_step(const DiagonalMetric3& m, const GeodesicState& y,
                              Real h) {
    const GeodesicState k1 = geodesic_rhs(m, y);
    const GeodesicState k2 = geodesic_rhs(m, y + (0.5 * h) * k1);
    const GeodesicState k3 = geodesic_rhs(m, y + (0.5 * h) * k2);
    const GeodesicState k4 = geodesic_rhs(m, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline Real state_dist(const GeodesicState& x, const GeodesicState& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b),
                     std::abs(x.t - y.t), std::abs(x.va - y.va),
                     std::abs(x.vb - y.vb), std::abs(x.vt - y.vt)});
}

inline Real rel_dev(Real x, Real x0, Real floor_scale) {
    return std::abs(x - x0) / std::max(std::abs(x0), floor_scale);
}

}  // namespace detail

/// Integrates the geodesic flow from s = 0 to s_end. Early termination (axis
/// reached, causal type of the t-direction changed, parameter left the
/// profile interval, state blew up) is a reported reason, not a failure.
inline Trajectory integrate(const DiagonalMetric3& m, const GeodesicState& st0,
                            Real s_end, const IntegrateOptions& opts = {}) {
    if (!(s_end > 0.0)) throw DomainError("integrate: s_end must be > 0");
    if (!(opts.h > 0.0)) throw DomainError("integrate: step must be > 0");

    Trajectory traj;
    traj.opts = opts;

    const int eps_t0 = m.coefficients_at(st0.t).gt >= 0.0 ? +1 : -1;
    const InvariantRecord inv0 = make_invariant_record(m, st0, 0.0);
    traj.samples.push_back({st0, inv0});

    // Guarded probe: distinguishes axis/causal degeneracy from domain exit.
    auto classify_state = [&](const GeodesicState& st) -> TerminationReason {
        if (!st.finite()) return TerminationReason::NonFinite;
        if (!m.profile().in_domain(st.t)) return TerminationReason::DomainExit;
        try {
            const auto c = m.coefficients_at(st.t);
            if (c.A < opts.axis_guard || c.B < opts.axis_guard)
                return TerminationReason::DegenerateMetric;
            const int eps = c.gt >= 0.0 ? +1 : -1;
            if (eps != eps_t0) return TerminationReason::DegenerateMetric;
        } catch (const DegenerateMetric&) {
            return TerminationReason::DegenerateMetric;
        }
        return TerminationReason::Completed;
    };

    GeodesicState y = st0;
    Real s = 0.0;
    Real h = opts.h;
    long accepted = 0;

    while (s < s_end - 1e-15) {
        const Real step = std::min(h, s_end - s);
        GeodesicState y_next;
        bool step_ok = true;
        TerminationReason step_fail = TerminationReason::DegenerateMetric;
        try {
            if (!opts.adaptive) {
                y_next = detail::rk4_step(m, y, step);
            } else {
                // Step doubling: one full step against two halves.
                const GeodesicState full = detail::rk4_step(m, y, step);
                const GeodesicState half =
                    detail::rk4_step(m, detail::rk4_step(m, y, 0.5 * step),
                                     0.5 * step);
                const Real err = detail::state_dist(full, half) / 15.0;
                if (err > opts.tol && step > 1e-12) {
                    h = std::max(0.25 * step, 1e-12);
                    continue;
                }
                y_next = half;
                if (err < 0.1 * opts.tol) h = std::min(2.0 * step, opts.h * 64.0);
            }
        } catch (const DegenerateMetric&) {
            step_ok = false;
        } catch (const DomainError&) {
            step_ok = false;
            step_fail = TerminationReason::DomainExit;
        }
        if (!step_ok || !y_next.finite()) {
            traj.reason = step_ok ? TerminationReason::NonFinite : step_fail;
            break;
        }
        const TerminationReason cls = classify_state(y_next);
        if (cls != TerminationReason::Completed) {
            traj.reason = cls;
            break;
        }

        s += step;
        y = y_next;
        ++accepted;

        const InvariantRecord inv = make_invariant_record(m, y, s);
        traj.drift.E = std::max(traj.drift.E, detail::rel_dev(inv.E, inv0.E, 1e-12));
        traj.drift.p_a =
            std::max(traj.drift.p_a, detail::rel_dev(inv.p_a, inv0.p_a, 1.0));
        traj.drift.p_b =
            std::max(traj.drift.p_b, detail::rel_dev(inv.p_b, inv0.p_b, 1.0));
        traj.drift.clairaut1 = std::max(
            traj.drift.clairaut1, detail::rel_dev(inv.clairaut1, inv0.clairaut1, 1.0));
        traj.drift.clairaut2 = std::max(
            traj.drift.clairaut2, detail::rel_dev(inv.clairaut2, inv0.clairaut2, 1.0));

        if (accepted % opts.record_stride == 0 || s >= s_end - 1e-15) {
            traj.samples.push_back({y, inv});
        }
    }
    traj.s_reached = s;
    return traj;
}

}  // namespace e24
