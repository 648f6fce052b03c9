#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "e24/errors.hpp"
#include "e24/profile.hpp"

// Induced diagonal 3-metrics diag(eps_a A(t)^2, eps_b B(t)^2, g_t(t)) of the
// rotational families, their Levi-Civita symbols, and the geodesic equations.

namespace e24 {

/// Denominators below this magnitude make double-precision geometry
/// meaningless; used for frame and metric degeneracy checks.
inline constexpr Real kDegenerateTol = 1e-10;

struct MetricCoefficients {
    Real A, dA;    // first angular radius and its t-derivative (A > 0)
    Real B, dB;    // second angular radius
    Real gt, dgt;  // signed t-t coefficient eps_t C(t)^2 and its derivative
};

/// Diagonal induced metric of one rotational family over a profile curve.
/// The angular coefficients are the family's two radii; the t-t coefficient
/// is the profile tangent's squared pseudo-norm, or exactly -1 when the
/// normalized option replaces it (the arclength convention the Lagrangians
/// assume).
class DiagonalMetric3 {
  public:
    DiagonalMetric3(SurfaceFamily fam, std::shared_ptr<const ProfileCurve> prof,
                    bool normalized)
        : fam_(fam), prof_(std::move(prof)), normalized_(normalized) {
        if (!prof_->matches_pattern(fam_))
            throw DomainError("induced metric: profile does not match the "
                              "family's planar pattern");
        switch (fam_) {
            case SurfaceFamily::S14: eps_a_ = +1; eps_b_ = -1; break;
            case SurfaceFamily::S23: eps_a_ = +1; eps_b_ = +1; break;
            case SurfaceFamily::S56: eps_a_ = -1; eps_b_ = +1; break;
        }
        // Causal type of the t-direction, fixed at construction; crossing it
        // later is a termination condition for the geodesic integrator.
        eps_t_ = raw_gt(0.5 * (t_min() + t_max())) >= 0.0 ? +1 : -1;
        // Consistency guard for the normalized option: warn when it would
        // silently change the geometry. The deviation is measured relative
        // to the derivative scale, so the cancellation noise of large
        // hyperbolic arguments does not trip it.
        Real dev = 0.0;
        const auto [ia, ib] = family_slots(fam_);
        for (int i = 0; i <= 20; ++i) {
            const Real t = t_min() + (t_max() - t_min()) * i / 20.0;
            const Real da = prof_->d1(ia + 1, t), db = prof_->d1(ib + 1, t);
            const Real scale = std::max(1.0, da * da + db * db);
            dev = std::max(dev, std::abs(raw_gt(t) + 1.0) / scale);
        }
        normalization_deviation_ = dev;
    }

    SurfaceFamily family() const { return fam_; }
    int eps_a() const { return eps_a_; }
    int eps_b() const { return eps_b_; }
    int eps_t() const { return normalized_ ? -1 : eps_t_; }
    bool normalized() const { return normalized_; }
    bool normalization_warning() const {
        return normalized_ && normalization_deviation_ > 1e-9;
    }
    Real normalization_deviation() const { return normalization_deviation_; }

    Real t_min() const { return prof_->t_min(); }
    Real t_max() const { return prof_->t_max(); }
    const ProfileCurve& profile() const { return *prof_; }

    /// Coefficient jet at t. Throws DegenerateMetric when a radius or the
    /// t-t coefficient falls below the degeneracy floor.
    MetricCoefficients coefficients_at(Real t) const {
        const auto [ia, ib] = family_slots(fam_);
        MetricCoefficients c;
        c.A = prof_->value(ia + 1, t);
        c.dA = prof_->d1(ia + 1, t);
        c.B = prof_->value(ib + 1, t);
        c.dB = prof_->d1(ib + 1, t);
        if (normalized_) {
            c.gt = -1.0;
            c.dgt = 0.0;
        } else {
            c.gt = raw_gt(t);
            c.dgt = raw_dgt(t);
        }
        if (c.A < kDegenerateTol || c.B < kDegenerateTol ||
            std::abs(c.gt) < kDegenerateTol) {
            throw DegenerateMetric("metric coefficient below degeneracy floor");
        }
        return c;
    }

    /// Positive scale of the t-direction, C(t) = sqrt(|g_t|).
    Real c_scale(Real t) const { return std::sqrt(std::abs(coefficients_at(t).gt)); }

    /// Squared pseudo-norm of the profile tangent (the un-normalized g_t).
    Real raw_gt(Real t) const {
        const auto [ia, ib] = family_slots(fam_);
        const Real da = prof_->d1(ia + 1, t), db = prof_->d1(ib + 1, t);
        const Real sb = fam_ == SurfaceFamily::S23 ? -1.0 : +1.0;
        return -da * da + sb * db * db;
    }

  private:
    Real raw_dgt(Real t) const {
        const auto [ia, ib] = family_slots(fam_);
        const Real da = prof_->d1(ia + 1, t), dda = prof_->d2(ia + 1, t);
        const Real db = prof_->d1(ib + 1, t), ddb = prof_->d2(ib + 1, t);
        const Real sb = fam_ == SurfaceFamily::S23 ? -1.0 : +1.0;
        return -2.0 * da * dda + sb * 2.0 * db * ddb;
    }

    SurfaceFamily fam_;
    std::shared_ptr<const ProfileCurve> prof_;
    bool normalized_;
    int eps_a_ = +1, eps_b_ = +1, eps_t_ = -1;
    Real normalization_deviation_ = 0.0;
};

/// Builds the family's induced 3-metric over a profile.
inline DiagonalMetric3 induced_metric3(SurfaceFamily fam, ProfileCurve profile,
                                       bool arclength_normalized = false) {
    return DiagonalMetric3(fam,
                           std::make_shared<const ProfileCurve>(std::move(profile)),
                           arclength_normalized);
}

/// Nonzero Levi-Civita symbols of the diagonal metric (coefficients depend on
/// t only): Gamma^a_{at}, Gamma^b_{bt}, Gamma^t_{aa}, Gamma^t_{bb},
/// Gamma^t_{tt}.
struct Christoffel3 {
    Real a_at, b_bt, t_aa, t_bb, t_tt;
};

inline Christoffel3 christoffel(const DiagonalMetric3& m, Real t) {
    const auto c = m.coefficients_at(t);
    Christoffel3 g;
    g.a_at = c.dA / c.A;
    g.b_bt = c.dB / c.B;
    g.t_aa = -m.eps_a() * c.A * c.dA / c.gt;
    g.t_bb = -m.eps_b() * c.B * c.dB / c.gt;
    g.t_tt = c.dgt / (2.0 * c.gt);
    return g;
}

/// Geodesic phase point: the family's two angles, the profile parameter, and
/// their derivatives with respect to the affine parameter.
struct GeodesicState {
    Real a = 0.0, b = 0.0, t = 0.0;
    Real va = 0.0, vb = 0.0, vt = 0.0;

    friend GeodesicState operator+(const GeodesicState& x, const GeodesicState& y) {
        return {x.a + y.a, x.b + y.b, x.t + y.t,
                x.va + y.va, x.vb + y.vb, x.vt + y.vt};
    }
    friend GeodesicState operator*(Real s, const GeodesicState& x) {
        return {s * x.a, s * x.b, s * x.t, s * x.va, s * x.vb, s * x.vt};
    }
    bool finite() const {
        return std::isfinite(a) && std::isfinite(b) && std::isfinite(t) &&
               std::isfinite(va) && std::isfinite(vb) && std::isfinite(vt);
    }
};

/// Energy and the two cyclic momenta: E = (eps_a A^2 va^2 + eps_b B^2 vb^2 +
/// g_t vt^2)/2, p_a = eps_a A^2 va, p_b = eps_b B^2 vb.
struct ConservedMomenta {
    Real E, p_a, p_b;
};

inline ConservedMomenta conserved_momenta(const DiagonalMetric3& m,
                                          const GeodesicState& st) {
    const auto c = m.coefficients_at(st.t);
    ConservedMomenta r;
    r.p_a = m.eps_a() * c.A * c.A * st.va;
    r.p_b = m.eps_b() * c.B * c.B * st.vb;
    r.E = 0.5 * (m.eps_a() * c.A * c.A * st.va * st.va +
                 m.eps_b() * c.B * c.B * st.vb * st.vb + c.gt * st.vt * st.vt);
    return r;
}

/// Right-hand side of the geodesic equations.
inline GeodesicState geodesic_rhs(const DiagonalMetric3& m,
                                  const GeodesicState& st) {
    const Christoffel3 g = christoffel(m, st.t);
    GeodesicState d;
    d.a = st.va;
    d.b = st.vb;
    d.t = st.vt;
    d.va = -2.0 * g.a_at * st.va * st.vt;
    d.vb = -2.0 * g.b_bt * st.vb * st.vt;
    d.vt = -g.t_tt * st.vt * st.vt - g.t_aa * st.va * st.va -
           g.t_bb * st.vb * st.vb;
    return d;
}

}  // namespace e24
