#pragma once

#include <cmath>
#include <limits>

#include "e24/metric.hpp"

// Angle-chart decomposition of geodesic velocities, the conserved products it
// yields, and the slope quadratures that reduce the geodesic equations to
// first order.

namespace e24 {

/// Orthonormal velocity components (u_a, u_b, u_t) = (A va, B vb, C vt).
struct OrthonormalVelocity {
    Real u_a, u_b, u_t;
};

inline OrthonormalVelocity orthonormal_velocity(const DiagonalMetric3& m,
                                                const GeodesicState& st) {
    const auto c = m.coefficients_at(st.t);
    return {c.A * st.va, c.B * st.vb, std::sqrt(std::abs(c.gt)) * st.vt};
}

enum class ChartStatus {
    InChart,       // all three chart relations hold to tolerance
    ResidualOnly,  // angles solved from (u_a, u_b); u_t relation has residual
    OutOfRange,    // the hyperbolic-trig chart cannot represent (u_a, u_b)
};

/// Result of the slope-angle decomposition. The conserved products are always
/// computed through their momentum identities (2 p / V up to the family sign),
/// so they remain available when the chart itself fails.
struct ClairautSample {
    Real V = 0.0;  // speed sqrt(2|E|)
    Real phi = std::numeric_limits<Real>::quiet_NaN();
    Real theta = std::numeric_limits<Real>::quiet_NaN();
    ChartStatus status = ChartStatus::OutOfRange;
    Real chart_residual = std::numeric_limits<Real>::quiet_NaN();
    Real clairaut1 = std::numeric_limits<Real>::quiet_NaN();
    Real clairaut2 = std::numeric_limits<Real>::quiet_NaN();
};

/// Solves the family's velocity chart
///   family 1: u_a = V cos(phi),        u_b = V cosh(theta) sin(phi),
///             u_t = V sinh(theta) sin(phi)
///   family 2: u_a = V cos(theta) sinh(phi), u_b = V sinh(phi) sin(theta),
///             u_t = V cosh(phi)
///   family 3: u_a = V sin(phi) cosh(theta), u_b = V sinh(theta) sin(phi),
///             u_t = V cos(phi)
/// for (phi, theta) from the two momentum-bearing components; the third
/// relation's defect is reported as chart_residual.
inline ClairautSample clairaut_decompose(const DiagonalMetric3& m,
                                         const GeodesicState& st) {
    const SurfaceFamily fam = m.family();
    const auto [u_a, u_b, u_t] = orthonormal_velocity(m, st);
    const auto mom = conserved_momenta(m, st);

    ClairautSample r;
    r.V = std::sqrt(2.0 * std::abs(mom.E));
    if (r.V < 1e-300) return r;  // null state: no chart, no products
    const Real V = r.V;

    const Real sign1 = fam == SurfaceFamily::S56 ? -1.0 : +1.0;
    r.clairaut1 = sign1 * 2.0 * mom.p_a / V;
    r.clairaut2 = 2.0 * mom.p_b / V;

    const Real tol = 1e-9 * V;
    const Real eps = 1e-12 * V;

    switch (fam) {
        case SurfaceFamily::S14: {
            if (std::abs(u_a) > V * (1.0 + 1e-12)) return r;  // |cos| > 1
            const Real cphi = std::clamp(u_a / V, -1.0, 1.0);
            const Real sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
            r.phi = std::acos(cphi);
            if (V * sphi < eps) {
                // Pure first-angle motion; theta is immaterial.
                if (std::abs(u_b) <= tol && std::abs(u_t) <= tol) {
                    r.theta = 0.0;
                    r.chart_residual = u_t;
                    r.status = ChartStatus::InChart;
                } else {
                    r.phi = std::numeric_limits<Real>::quiet_NaN();
                }
                return r;
            }
            const Real ch = u_b / (V * sphi);
            if (ch < 1.0 - 1e-9) {
                r.phi = std::numeric_limits<Real>::quiet_NaN();
                return r;  // cosh pair needs the dominant component
            }
            r.theta = std::copysign(std::acosh(std::max(ch, 1.0)),
                                    u_t == 0.0 ? 0.0 : u_t);
            r.chart_residual = u_t - V * std::sinh(r.theta) * sphi;
            r.status = std::abs(r.chart_residual) <= tol
                           ? ChartStatus::InChart
                           : ChartStatus::ResidualOnly;
            return r;
        }
        case SurfaceFamily::S23: {
            const Real sh = std::hypot(u_a, u_b) / V;
            r.phi = std::asinh(sh);
            r.theta = sh * V < eps ? 0.0 : std::atan2(u_b, u_a);
            r.chart_residual = u_t - V * std::cosh(r.phi);
            r.status = std::abs(r.chart_residual) <= tol
                           ? ChartStatus::InChart
                           : ChartStatus::ResidualOnly;
            return r;
        }
        case SurfaceFamily::S56: {
            if (u_a < 0.0 || u_a * u_a < u_b * u_b) return r;
            const Real s2 = (u_a * u_a - u_b * u_b) / (V * V);
            if (s2 > 1.0 + 1e-9) return r;  // sin(phi) cannot exceed 1
            const Real sphi = std::sqrt(std::min(s2, 1.0));
            const Real cphi = std::copysign(std::sqrt(std::max(0.0, 1.0 - s2)),
                                            u_t == 0.0 ? 1.0 : u_t);
            if (V * sphi < eps && std::abs(u_a) > tol) {
                // sin(phi) -> 0 with a nonzero component needs theta -> inf.
                return r;
            }
            r.phi = std::atan2(sphi, cphi);
            r.theta = V * sphi < eps ? 0.0 : std::asinh(u_b / (V * sphi));
            r.chart_residual = u_t - V * cphi;
            r.status = std::abs(r.chart_residual) <= tol
                           ? ChartStatus::InChart
                           : ChartStatus::ResidualOnly;
            return r;
        }
    }
    return r;
}

/// Builds a state at (a0, b0, t0) whose velocity has the chart direction
/// (phi, theta) and is rescaled so the speed is exactly 1.
inline GeodesicState make_unit_speed_state(const DiagonalMetric3& m, Real a0,
                                           Real b0, Real t0, Real phi,
                                           Real theta) {
    Real u_a, u_b, u_t;
    switch (m.family()) {
        case SurfaceFamily::S14:
            u_a = std::cos(phi);
            u_b = std::cosh(theta) * std::sin(phi);
            u_t = std::sinh(theta) * std::sin(phi);
            break;
        case SurfaceFamily::S23:
            u_a = std::cos(theta) * std::sinh(phi);
            u_b = std::sinh(phi) * std::sin(theta);
            u_t = std::cosh(phi);
            break;
        case SurfaceFamily::S56:
            u_a = std::sin(phi) * std::cosh(theta);
            u_b = std::sinh(theta) * std::sin(phi);
            u_t = std::cos(phi);
            break;
        default:
            u_a = u_b = u_t = 0.0;
    }
    const auto c = m.coefficients_at(t0);
    GeodesicState st{a0, b0, t0, u_a / c.A, u_b / c.B,
                     u_t / std::sqrt(std::abs(c.gt))};
    const Real two_e = 2.0 * conserved_momenta(m, st).E;
    if (std::abs(two_e) < 1e-12)
        throw DecompositionOutOfRange(
            "chart direction is null; cannot normalize to unit speed");
    const Real scale = 1.0 / std::sqrt(std::abs(two_e));
    st.va *= scale;
    st.vb *= scale;
    st.vt *= scale;
    return st;
}

/// Value under the square root of the family's slope quadrature for the given
/// angle equation (1 = first angle, 2 = second angle). Negative values mark
/// turning points / unreachable regions.
inline Real quadrature_radicand(SurfaceFamily fam, int equation, Real phi,
                                Real theta, Real L, FormulaVariant variant) {
    const Real sphi = std::sin(phi), cphi = std::cos(phi);
    switch (fam) {
        case SurfaceFamily::S14: {
            if (equation == 1) {
                // Exact consequence of the conserved momenta with L = 2E.
                const Real n = cphi * cphi -
                               std::cosh(theta) * std::cosh(theta) * sphi * sphi - L;
                return n / (cphi * cphi);
            }
            if (variant == FormulaVariant::Verbatim) {
                // As printed: cot^2(phi) tanh^2(theta) - L sech^2(phi) csc^2(phi).
                const Real th = std::tanh(theta);
                const Real sech_phi = 1.0 / std::cosh(phi);
                return (cphi * cphi / (sphi * sphi)) * th * th -
                       L * sech_phi * sech_phi / (sphi * sphi);
            }
            const Real chth = std::cosh(theta);
            const Real n = cphi * cphi - chth * chth * sphi * sphi - L;
            return n / (chth * chth * sphi * sphi);
        }
        case SurfaceFamily::S23: {
            const Real shphi = std::sinh(phi);
            return shphi * shphi - L;
        }
        case SurfaceFamily::S56: {
            const Real printed = L + sphi * sphi;
            return variant == FormulaVariant::Verbatim ? printed : -printed;
        }
    }
    return 0.0;
}

/// Slope dt/d(angle) of the quadrature. Throws ImaginarySlope when the
/// radicand is negative. For family 3 the printed expression carries a
/// leading imaginary unit; it is recorded on the result, not applied.
struct QuadratureSlope {
    Real value;
    bool imaginary_prefactor;
};

inline QuadratureSlope quadrature_slope(SurfaceFamily fam, int equation,
                                        Real phi, Real theta, Real L,
                                        const ProfileCurve& profile, Real t,
                                        FormulaVariant variant) {
    if (equation != 1 && equation != 2)
        throw DomainError("quadrature equation index must be 1 or 2");
    const Real rad = quadrature_radicand(fam, equation, phi, theta, L, variant);
    if (rad < 0.0) throw ImaginarySlope("quadrature radicand is negative");
    const Real root = std::sqrt(rad);
    const auto [ia, ib] = family_slots(fam);
    const Real fa = profile.value(ia + 1, t);
    const Real fb = profile.value(ib + 1, t);
    switch (fam) {
        case SurfaceFamily::S14: {
            if (equation == 1) return {fa * root, false};
            if (variant == FormulaVariant::Verbatim) {
                // Printed with f2, identically zero on this planar pattern.
                return {profile.value(2, t) * root, false};
            }
            return {fb * root, false};
        }
        case SurfaceFamily::S23: {
            const Real denom = equation == 1
                                   ? std::cos(theta) * std::sinh(phi)
                                   : std::sinh(phi) * std::sin(theta);
            if (std::abs(denom) < kDegenerateTol)
                throw DomainError("quadrature denominator vanishes");
            return {(equation == 1 ? fa : fb) * root / denom, false};
        }
        case SurfaceFamily::S56: {
            const Real denom = equation == 1
                                   ? std::sin(phi) * std::cosh(theta)
                                   : std::sinh(theta) * std::sin(phi);
            if (std::abs(denom) < kDegenerateTol)
                throw DomainError("quadrature denominator vanishes");
            const bool imag = variant == FormulaVariant::Verbatim;
            return {(equation == 1 ? fa : fb) * root / denom, imag};
        }
    }
    return {0.0, false};
}

}  // namespace e24
