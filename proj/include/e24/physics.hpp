#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "e24/geodesic.hpp"

// Specific energy, the -2 dt/ds angular-momentum convention, and the
// effective-energy relations as checkable residuals over trajectories.

namespace e24 {

/// Kinetic-energy quadratic form written out per family:
///   family 1:  (A va)^2/2 - (B vb)^2/2 + g_t vt^2/2
///   family 2:  (A va)^2/2 + (B vb)^2/2 + g_t vt^2/2
///   family 3: -(A va)^2/2 + (B vb)^2/2 + g_t vt^2/2
/// Identical to conserved_momenta's E through a different code path.
inline Real specific_energy(const DiagonalMetric3& m, const GeodesicState& st) {
    const auto c = m.coefficients_at(st.t);
    const Real ua = c.A * st.va, ub = c.B * st.vb;
    switch (m.family()) {
        case SurfaceFamily::S14:
            return 0.5 * ua * ua - 0.5 * ub * ub + 0.5 * c.gt * st.vt * st.vt;
        case SurfaceFamily::S23:
            return 0.5 * ua * ua + 0.5 * ub * ub + 0.5 * c.gt * st.vt * st.vt;
        case SurfaceFamily::S56:
            return -0.5 * ua * ua + 0.5 * ub * ub + 0.5 * c.gt * st.vt * st.vt;
    }
    return 0.0;
}

/// Momentum-convention specific angular momentum, l = -2 dt/ds.
inline Real specific_angular_momentum(const GeodesicState& st) {
    return -2.0 * st.vt;
}

/// Same convention on the orthonormal t-component, l = -2 C(t) dt/ds; equal
/// to the above under the normalized metric (C == 1).
inline Real orthonormal_angular_momentum(const DiagonalMetric3& m,
                                   const GeodesicState& st) {
    return -2.0 * orthonormal_velocity(m, st).u_t;
}

/// Left minus right of the family's effective-energy relation:
///   family 1: E = V^2/2 (cos^2 phi - cosh^2 theta sin^2 phi) - l^2/8
///   family 2: E = V^2/2 (sinh^2 phi - l^2/8)          [verbatim grouping]
///             E = V^2/2 sinh^2 phi - l^2/8            [corrected grouping]
///   family 3: E = -V^2 sin^2 phi / 2 - l^2/8
inline Real effective_energy_residual(SurfaceFamily fam, FormulaVariant variant,
                                      Real E, Real V, Real phi, Real theta,
                                      Real l) {
    const Real v2 = V * V, l2 = l * l;
    Real rhs = 0.0;
    switch (fam) {
        case SurfaceFamily::S14: {
            const Real c = std::cos(phi), s = std::sin(phi),
                       ch = std::cosh(theta);
            rhs = 0.5 * v2 * (c * c - ch * ch * s * s) - l2 / 8.0;
            break;
        }
        case SurfaceFamily::S23: {
            const Real sh = std::sinh(phi);
            rhs = variant == FormulaVariant::Verbatim
                      ? 0.5 * v2 * (sh * sh - l2 / 8.0)
                      : 0.5 * v2 * sh * sh - l2 / 8.0;
            break;
        }
        case SurfaceFamily::S56: {
            const Real s = std::sin(phi);
            rhs = -0.5 * v2 * s * s - l2 / 8.0;
            break;
        }
    }
    return E - rhs;
}

/// Residual diagnostics of one relation over an integrated trajectory.
struct EnergyReport {
    std::string family;
    std::string variant;
    Real E_specific = 0.0;
    Real l_value = 0.0;            // value at the first sample
    Real residual_mean = 0.0;
    Real residual_max_drift = 0.0; // max |residual - residual(0)|
    Real residual_max_abs = 0.0;
    bool zeroed = false;           // the variant reproduces E identically
};

inline EnergyReport make_energy_report(const DiagonalMetric3& m,
                                       const Trajectory& traj,
                                       FormulaVariant variant) {
    EnergyReport rep;
    rep.family = family_name(m.family());
    rep.variant = variant == FormulaVariant::Verbatim ? "verbatim" : "corrected";
    if (traj.samples.empty()) return rep;
    Real first = 0.0, sum = 0.0;
    bool have_first = false;
    std::size_t used = 0;
    for (const auto& sample : traj.samples) {
        const auto& inv = sample.inv;
        if (!std::isfinite(inv.phi)) continue;  // out-of-chart samples carry no angles
        const Real r = effective_energy_residual(m.family(), variant, inv.E,
                                                 inv.V, inv.phi, inv.theta, inv.l);
        if (!have_first) {
            first = r;
            rep.E_specific = inv.E;
            rep.l_value = inv.l;
            have_first = true;
        }
        sum += r;
        ++used;
        rep.residual_max_abs = std::max(rep.residual_max_abs, std::abs(r));
        rep.residual_max_drift =
            std::max(rep.residual_max_drift, std::abs(r - first));
    }
    if (used > 0) rep.residual_mean = sum / static_cast<Real>(used);
    rep.zeroed = rep.residual_max_abs < 1e-9;
    return rep;
}

}  // namespace e24
