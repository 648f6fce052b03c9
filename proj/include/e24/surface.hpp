#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "e24/errors.hpp"
#include "e24/linalg.hpp"
#include "e24/metric.hpp"
#include "e24/profile.hpp"
#include "e24/symmetry.hpp"

// The three rotational families: full two-angle immersions, the
// curve-restricted 2-surfaces, their normal frames, and Gaussian/mean
// curvature both in closed form (verbatim printed expressions and the
// corrected assembly) and through an independent finite-difference
// fundamental-forms oracle.

namespace e24 {

/// The commuting generator pair that sweeps each family.
inline std::pair<Generator, Generator> family_generators(SurfaceFamily fam) {
    switch (fam) {
        case SurfaceFamily::S14: return {Generator::Omega1, Generator::Omega4};
        case SurfaceFamily::S23: return {Generator::Omega2, Generator::Omega3};
        case SurfaceFamily::S56: return {Generator::Omega5, Generator::Omega6};
    }
    return {Generator::Omega1, Generator::Omega1};
}

/// General (non-planar) immersion: both rotation flows applied to the
/// generating curve. Closed-form; the flow-matrix route is the test oracle.
inline Vec4 immerse_full(SurfaceFamily fam, const ProfileCurve& profile,
                         Real angle1, Real angle2, Real s) {
    profile.require_in_domain(s);
    const Real f1 = profile.value(1, s), f2 = profile.value(2, s);
    const Real f3 = profile.value(3, s), f4 = profile.value(4, s);
    switch (fam) {
        case SurfaceFamily::S14: {
            const Real cx = std::cosh(angle1), sx = std::sinh(angle1);
            const Real ca = std::cosh(angle2), sa = std::sinh(angle2);
            return {f1 * cx + f3 * sx, f2 * ca + f4 * sa, f1 * sx + f3 * cx,
                    f2 * sa + f4 * ca};
        }
        case SurfaceFamily::S23: {
            const Real cy = std::cosh(angle1), sy = std::sinh(angle1);
            const Real cz = std::cosh(angle2), sz = std::sinh(angle2);
            return {f1 * cy + f4 * sy, f2 * cz + f3 * sz, f2 * sz + f3 * cz,
                    f1 * sy + f4 * cy};
        }
        case SurfaceFamily::S56: {
            const Real cb = std::cos(angle1), sb = std::sin(angle1);
            const Real ct = std::cos(angle2), st = std::sin(angle2);
            return {f1 * cb + f2 * sb, -f1 * sb + f2 * cb, f3 * ct + f4 * st,
                    -f3 * st + f4 * ct};
        }
    }
    return {};
}

/// The 2-surface obtained by restricting the angles to a path.
inline Vec4 immerse_restricted(SurfaceFamily fam, const ProfileCurve& profile,
                               const AnglePath& path, Real t, Real s) {
    return immerse_full(fam, profile, path.a(t), path.b(t), s);
}

namespace detail {

/// Pointwise jet of the planar pair and the angle path, the common input of
/// every closed-form expression below.
struct FamilyJet {
    Real fa, fa1, fa2;  // first radius and its s-derivatives
    Real fb, fb1, fb2;
    Real a, da, dda;    // first angle along the path and its t-derivatives
    Real b, db, ddb;
};

inline FamilyJet family_jet(SurfaceFamily fam, const ProfileCurve& profile,
                            const AnglePath& path, Real t, Real s) {
    if (!profile.matches_pattern(fam))
        throw DomainError("profile does not match the family's planar pattern");
    profile.require_in_domain(s);
    const auto [ia, ib] = family_slots(fam);
    FamilyJet j;
    j.fa = profile.value(ia + 1, s);
    j.fa1 = profile.d1(ia + 1, s);
    j.fa2 = profile.d2(ia + 1, s);
    j.fb = profile.value(ib + 1, s);
    j.fb1 = profile.d1(ib + 1, s);
    j.fb2 = profile.d2(ib + 1, s);
    j.a = path.a(t);
    j.da = path.da(t);
    j.dda = path.dda(t);
    j.b = path.b(t);
    j.db = path.db(t);
    j.ddb = path.ddb(t);
    return j;
}

/// Unnormalized normal pair spanning the orthogonal complement of the
/// restricted surface's tangent plane, in the orientation the closed
/// curvature expressions use.
inline std::pair<Vec4, Vec4> raw_normals(SurfaceFamily fam, const FamilyJet& j) {
    switch (fam) {
        case SurfaceFamily::S14: {
            const Real shx = std::sinh(j.a), chx = std::cosh(j.a);
            const Real sha = std::sinh(j.b), cha = std::cosh(j.b);
            Vec4 n3{j.fb * j.db * shx, j.fa * j.da * cha, j.fb * j.db * chx,
                    j.fa * j.da * sha};
            Vec4 n4{j.fb1 * chx, j.fa1 * sha, j.fb1 * shx, j.fa1 * cha};
            return {n3, n4};
        }
        case SurfaceFamily::S23: {
            const Real shy = std::sinh(j.a), chy = std::cosh(j.a);
            const Real shz = std::sinh(j.b), chz = std::cosh(j.b);
            Vec4 n3{j.fb * j.db * shy, -j.fa * j.da * shz, -j.fa * j.da * chz,
                    j.fb * j.db * chy};
            Vec4 n4{j.fb1 * chy, -j.fa1 * chz, -j.fa1 * shz, j.fb1 * shy};
            return {n3, n4};
        }
        case SurfaceFamily::S56: {
            const Real sb = std::sin(j.a), cb = std::cos(j.a);
            const Real st = std::sin(j.b), ct = std::cos(j.b);
            Vec4 n3{-j.fb * j.db * cb, j.fb * j.db * sb, -j.fa * j.da * ct,
                    j.fa * j.da * st};
            Vec4 n4{j.fb1 * sb, j.fb1 * cb, j.fa1 * st, j.fa1 * ct};
            return {n3, n4};
        }
    }
    return {};
}

/// First fundamental form of the restricted surface, exact in the jet.
struct FirstForm {
    Real E, F, G;
};

inline FirstForm first_form_closed(SurfaceFamily fam, const FamilyJet& j) {
    switch (fam) {
        case SurfaceFamily::S14:
            return {j.fa * j.fa * j.da * j.da - j.fb * j.fb * j.db * j.db, 0.0,
                    -j.fa1 * j.fa1 + j.fb1 * j.fb1};
        case SurfaceFamily::S23:
            return {j.fa * j.fa * j.da * j.da + j.fb * j.fb * j.db * j.db, 0.0,
                    -j.fa1 * j.fa1 - j.fb1 * j.fb1};
        case SurfaceFamily::S56:
            return {-j.fa * j.fa * j.da * j.da + j.fb * j.fb * j.db * j.db, 0.0,
                    -j.fa1 * j.fa1 + j.fb1 * j.fb1};
    }
    return {};
}

/// Projections of the second-derivative vectors onto the unnormalized
/// normals: Lt = <X_tt, n>, Mt = <X_ts, n>, Nt = <X_ss, n>.
struct RawProjections {
    Real L3, M3, N3, L4, M4, N4;
};

inline RawProjections raw_projections(SurfaceFamily fam, const FamilyJet& j) {
    RawProjections p;
    p.L3 = j.fa * j.fb * (j.dda * j.db - j.da * j.ddb);
    p.M3 = j.da * j.db * (j.fa1 * j.fb - j.fa * j.fb1);
    p.N3 = 0.0;
    p.M4 = 0.0;
    p.N4 = j.fa1 * j.fb2 - j.fa2 * j.fb1;
    const Real l4 = j.fa1 * j.fb * j.db * j.db - j.fb1 * j.fa * j.da * j.da;
    p.L4 = fam == SurfaceFamily::S56 ? -l4 : l4;
    return p;
}

}  // namespace detail

struct NormalFrame {
    Vec4 e3, e4;
    Real eps3, eps4;  // <e3,e3> and <e4,e4>, each +1 or -1
};

/// Unit normal pair of the restricted surface. Throws DegenerateFrame when a
/// normal's squared pseudo-norm falls under the degeneracy floor (a null
/// direction entered the tangent or normal plane).
inline NormalFrame normal_frame(SurfaceFamily fam, const ProfileCurve& profile,
                                const AnglePath& path, Real t, Real s) {
    const auto j = detail::family_jet(fam, profile, path, t, s);
    const auto [n3, n4] = detail::raw_normals(fam, j);
    const Real q3 = inner(n3, n3), q4 = inner(n4, n4);
    if (std::abs(q3) < kDegenerateTol || std::abs(q4) < kDegenerateTol)
        throw DegenerateFrame("normal frame denominator below tolerance "
                              "(null tangent direction)");
    NormalFrame f;
    f.e3 = (1.0 / std::sqrt(std::abs(q3))) * n3;
    f.e4 = (1.0 / std::sqrt(std::abs(q4))) * n4;
    f.eps3 = q3 > 0.0 ? 1.0 : -1.0;
    f.eps4 = q4 > 0.0 ? 1.0 : -1.0;
    return f;
}

struct CurvatureSample {
    Real K;
    Real H_e3, H_e4;  // mean-curvature components on the frame below
    Vec4 e3, e4;
    Real eps3, eps4;
};

/// Closed-form curvature of the restricted 2-surface.
///
/// The corrected variant assembles K and H from the exact polynomial
/// projections onto the unnormalized normals, so it is valid for every
/// nondegenerate sign configuration of the denominators. The verbatim
/// variant evaluates the printed expressions literally and requires their
/// square-root arguments to be positive.
inline CurvatureSample curvature_closed(SurfaceFamily fam,
                                        const ProfileCurve& profile,
                                        const AnglePath& path, Real t, Real s,
                                        FormulaVariant variant) {
    const auto j = detail::family_jet(fam, profile, path, t, s);
    const auto [n3, n4] = detail::raw_normals(fam, j);
    const Real q3 = inner(n3, n3), q4 = inner(n4, n4);
    if (std::abs(q3) < kDegenerateTol || std::abs(q4) < kDegenerateTol)
        throw DegenerateFrame("curvature frame denominator below tolerance");

    CurvatureSample out;
    out.e3 = (1.0 / std::sqrt(std::abs(q3))) * n3;
    out.e4 = (1.0 / std::sqrt(std::abs(q4))) * n4;
    out.eps3 = q3 > 0.0 ? 1.0 : -1.0;
    out.eps4 = q4 > 0.0 ? 1.0 : -1.0;

    const auto ff = detail::first_form_closed(fam, j);
    const Real det = ff.E * ff.G - ff.F * ff.F;
    if (std::abs(det) < kDegenerateTol)
        throw DegenerateFrame("first fundamental form is degenerate");

    if (variant == FormulaVariant::Corrected) {
        const auto p = detail::raw_projections(fam, j);
        out.K = ((p.L3 * p.N3 - p.M3 * p.M3) / q3 +
                 (p.L4 * p.N4 - p.M4 * p.M4) / q4) /
                det;
        const Real w3 = std::sqrt(std::abs(q3)), w4 = std::sqrt(std::abs(q4));
        out.H_e3 = w3 * (p.L3 * ff.G - 2.0 * p.M3 * ff.F + p.N3 * ff.E) /
                   (2.0 * det * q3);
        out.H_e4 = w4 * (p.L4 * ff.G - 2.0 * p.M4 * ff.F + p.N4 * ff.E) /
                   (2.0 * det * q4);
        return out;
    }

    // Verbatim printed expressions.
    const Real fa = j.fa, fb = j.fb, fa1 = j.fa1, fb1 = j.fb1;
    const Real fa2 = j.fa2, fb2 = j.fb2;
    const Real da = j.da, db = j.db, dda = j.dda, ddb = j.ddb;
    switch (fam) {
        case SurfaceFamily::S14: {
            const Real w3sq = fb * fb * db * db - fa * fa * da * da;
            const Real w4sq = -fa1 * fa1 + fb1 * fb1;
            if (w3sq <= 0.0 || w4sq <= 0.0)
                throw DegenerateFrame("printed square roots are imaginary here");
            const Real cross = fa1 * fb - fa * fb1;
            out.K = cross * cross * da * da * db * db / w3sq +
                    (fa1 * fb * db * db - fb1 * fa * da * da) *
                        (fa1 * fb2 - fa2 * fb1) / w4sq;
            out.H_e3 = fa * fb * (dda * db + da * ddb) / (2.0 * std::sqrt(w3sq)) +
                       (fb1 * fa * da * da - fa1 * fb * db * db) /
                           (2.0 * std::sqrt(w4sq));
            out.H_e4 = (fa1 * fb2 - fa2 * fb1) / (2.0 * std::sqrt(w4sq));
            return out;
        }
        case SurfaceFamily::S23: {
            const Real w3sq = fb * fb * db * db + fa * fa * da * da;
            const Real w4sq = fa1 * fa1 + fb1 * fb1;
            if (w3sq <= 0.0 || w4sq <= 0.0)
                throw DegenerateFrame("printed square roots are imaginary here");
            const Real sum = fa * fb1 + fa1 * fb;
            out.K = -(sum * sum * da * da * db * db / w3sq +
                      (fa * fb1 * da * da + fa1 * fb * db * db) *
                          (fa2 * fb1 + fa1 * fb2) / w4sq);
            out.H_e3 = fa * fb * (da * ddb + dda * db) / (2.0 * std::sqrt(w3sq));
            out.H_e4 = (fa * fb1 * da * da + fa1 * fb * db * db - fa2 * fb1 -
                        fa1 * fb2) /
                       (2.0 * std::sqrt(w4sq));
            return out;
        }
        case SurfaceFamily::S56: {
            const Real w3sq = -fa * fa * da * da + fb * fb * db * db;
            const Real w4sq = -fa1 * fa1 + fb1 * fb1;
            if (w3sq <= 0.0 || w4sq <= 0.0)
                throw DegenerateFrame("printed square roots are imaginary here");
            const Real cross = fa1 * fb - fa * fb1;
            const Real mid = fb1 * fa * da * da - fa1 * fb * db * db;
            out.K = -(cross * cross * da * da * db * db / w3sq +
                      (-fa2 * fb1 + fa1 * fb2) * mid * mid / w4sq);
            out.H_e3 =
                fb * fa * (da * ddb - db * dda) / (2.0 * std::sqrt(w3sq));
            out.H_e4 = (mid + fa2 * fb1 - fa1 * fb2) / (2.0 * std::sqrt(w4sq));
            return out;
        }
    }
    return out;
}

// --- Finite-difference fundamental-forms oracle ------------------------------

inline constexpr Real kFdStep1 = 1e-4;  // first derivatives
inline constexpr Real kFdStep2 = 1e-3;  // second derivatives

using ImmersionFn = std::function<Vec4(Real, Real)>;

namespace detail {

struct SurfaceDerivatives {
    Vec4 xt, xs, xtt, xts, xss;
};

inline SurfaceDerivatives fd_derivatives(const ImmersionFn& X, Real t, Real s) {
    const Real h1 = kFdStep1, h2 = kFdStep2;
    SurfaceDerivatives d;
    d.xt = (1.0 / (2.0 * h1)) * (X(t + h1, s) - X(t - h1, s));
    d.xs = (1.0 / (2.0 * h1)) * (X(t, s + h1) - X(t, s - h1));
    d.xtt = (1.0 / (h2 * h2)) *
            (X(t + h2, s) - 2.0 * X(t, s) + X(t - h2, s));
    d.xss = (1.0 / (h2 * h2)) *
            (X(t, s + h2) - 2.0 * X(t, s) + X(t, s - h2));
    d.xts = (1.0 / (4.0 * h2 * h2)) *
            (X(t + h2, s + h2) - X(t + h2, s - h2) - X(t - h2, s + h2) +
             X(t - h2, s - h2));
    return d;
}

inline CurvatureSample assemble_from_forms(const SurfaceDerivatives& d,
                                           const Vec4& e3, const Vec4& e4) {
    const Real E = inner(d.xt, d.xt);
    const Real F = inner(d.xt, d.xs);
    const Real G = inner(d.xs, d.xs);
    const Real det = E * G - F * F;
    if (std::abs(det) < kDegenerateTol)
        throw DegenerateMetric("first fundamental form is degenerate");
    CurvatureSample out;
    out.e3 = e3;
    out.e4 = e4;
    out.eps3 = inner(e3, e3) > 0.0 ? 1.0 : -1.0;
    out.eps4 = inner(e4, e4) > 0.0 ? 1.0 : -1.0;
    const Real L3 = inner(d.xtt, e3), M3 = inner(d.xts, e3), N3 = inner(d.xss, e3);
    const Real L4 = inner(d.xtt, e4), M4 = inner(d.xts, e4), N4 = inner(d.xss, e4);
    out.K = (out.eps3 * (L3 * N3 - M3 * M3) + out.eps4 * (L4 * N4 - M4 * M4)) / det;
    out.H_e3 = out.eps3 * (L3 * G - 2.0 * M3 * F + N3 * E) / (2.0 * det);
    out.H_e4 = out.eps4 * (L4 * G - 2.0 * M4 * F + N4 * E) / (2.0 * det);
    return out;
}

}  // namespace detail

/// Ground-truth oracle: first/second fundamental forms by central finite
/// differences of the restricted immersion, projected on the family frame.
inline CurvatureSample curvature_numeric(SurfaceFamily fam,
                                         const ProfileCurve& profile,
                                         const AnglePath& path, Real t, Real s) {
    const NormalFrame f = normal_frame(fam, profile, path, t, s);
    const ImmersionFn X = [&](Real tt, Real ss) {
        return immerse_restricted(fam, profile, path, tt, ss);
    };
    return detail::assemble_from_forms(detail::fd_derivatives(X, t, s), f.e3,
                                       f.e4);
}

/// Oracle for an arbitrary immersion: the normal frame is built from the
/// triple cross product of the finite-difference tangents, so it also covers
/// surfaces whose family frame degenerates (e.g. constant radii).
inline CurvatureSample curvature_numeric_general(const ImmersionFn& X, Real t,
                                                 Real s) {
    const auto d = detail::fd_derivatives(X, t, s);
    Vec4 basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (const Vec4& trial : basis) {
        const Vec4 n3 = cross3(d.xt, d.xs, trial);
        const Real q3 = inner(n3, n3);
        if (std::abs(q3) < 1e-6 * std::max(1.0, euclidean_sq(n3))) continue;
        const Vec4 n4 = cross3(d.xt, d.xs, n3);
        const Real q4 = inner(n4, n4);
        if (std::abs(q4) < 1e-6 * std::max(1.0, euclidean_sq(n4))) continue;
        const Vec4 e3 = (1.0 / std::sqrt(std::abs(q3))) * n3;
        const Vec4 e4 = (1.0 / std::sqrt(std::abs(q4))) * n4;
        return detail::assemble_from_forms(d, e3, e4);
    }
    throw DegenerateFrame("no nondegenerate normal pair found");
}

}  // namespace e24
