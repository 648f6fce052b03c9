#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "e24/errors.hpp"

// Exact-signature linear algebra for the split space R^4 with metric
// diag(-1,-1,+1,+1): inner product, causal classification, the triple cross
// product and membership tests for the three quadric space forms.

namespace e24 {

using Real = double;

/// Metric signs of the four coordinate slots.
inline constexpr std::array<Real, 4> kSignature{-1.0, -1.0, +1.0, +1.0};

struct Vec4 {
    Real c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

    Vec4() = default;
    Vec4(Real a, Real b, Real c, Real d) : c1(a), c2(b), c3(c), c4(d) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
            !std::isfinite(d)) {
            throw DomainError("Vec4: components must be finite");
        }
    }

    Real operator[](std::size_t i) const {
        return i == 0 ? c1 : i == 1 ? c2 : i == 2 ? c3 : c4;
    }
    Real& operator[](std::size_t i) {
        return i == 0 ? c1 : i == 1 ? c2 : i == 2 ? c3 : c4;
    }

    friend Vec4 operator+(const Vec4& u, const Vec4& v) {
        return {u.c1 + v.c1, u.c2 + v.c2, u.c3 + v.c3, u.c4 + v.c4};
    }
    friend Vec4 operator-(const Vec4& u, const Vec4& v) {
        return {u.c1 - v.c1, u.c2 - v.c2, u.c3 - v.c3, u.c4 - v.c4};
    }
    friend Vec4 operator*(Real a, const Vec4& v) {
        return {a * v.c1, a * v.c2, a * v.c3, a * v.c4};
    }
    friend Vec4 operator-(const Vec4& v) { return {-v.c1, -v.c2, -v.c3, -v.c4}; }
};

/// Indefinite inner product <u,v> = -u1 v1 - u2 v2 + u3 v3 + u4 v4.
inline Real inner(const Vec4& u, const Vec4& v) {
    return -u.c1 * v.c1 - u.c2 * v.c2 + u.c3 * v.c3 + u.c4 * v.c4;
}

/// Euclidean square sum, used only for scale-relative tolerances.
inline Real euclidean_sq(const Vec4& v) {
    return v.c1 * v.c1 + v.c2 * v.c2 + v.c3 * v.c3 + v.c4 * v.c4;
}

/// Pseudo-norm sqrt(|<v,v>|); zero exactly on null vectors.
inline Real norm(const Vec4& v) { return std::sqrt(std::abs(inner(v, v))); }

enum class CausalClass { Spacelike, Timelike, Null, Zero };

/// Scale-relative tolerance for deciding <v,v> = 0.
inline Real null_tolerance(const Vec4& v) {
    return 1e-12 * std::max(1.0, euclidean_sq(v));
}

/// Total trichotomy (plus the zero vector, which the null class excludes).
inline CausalClass causal_class(const Vec4& v) {
    const Real q = inner(v, v);
    const Real tol = null_tolerance(v);
    if (std::abs(q) <= tol) {
        return euclidean_sq(v) == 0.0 ? CausalClass::Zero : CausalClass::Null;
    }
    return q > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

/// Triple cross product: cofactor expansion of the formal determinant whose
/// first row is (-i1, -i2, i3, i4). The result is metric-orthogonal to all
/// three arguments and alternating in them.
inline Vec4 cross3(const Vec4& x, const Vec4& y, const Vec4& z) {
    // 2x2 minors of rows (y,z), columns (i,j).
    auto m2 = [&](int i, int j) { return y[i] * z[j] - y[j] * z[i]; };
    // 3x3 minor of (x;y;z) with column k removed, expanded along x.
    auto m3 = [&](int a, int b, int c) {
        return x[a] * m2(b, c) - x[b] * m2(a, c) + x[c] * m2(a, b);
    };
    const Real a1 = m3(1, 2, 3);
    const Real a2 = m3(0, 2, 3);
    const Real a3 = m3(0, 1, 3);
    const Real a4 = m3(0, 1, 2);
    return {-a1, a2, a3, -a4};
}

// --- 4x4 matrices -----------------------------------------------------------

struct Mat4 {
    // Row-major.
    std::array<std::array<Real, 4>, 4> m{};

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }
    static Mat4 zero() { return Mat4{}; }

    Real& operator()(int i, int j) { return m[i][j]; }
    Real operator()(int i, int j) const { return m[i][j]; }

    Vec4 apply(const Vec4& v) const {
        Vec4 r;
        for (int i = 0; i < 4; ++i) {
            Real s = 0.0;
            for (int j = 0; j < 4; ++j) s += m[i][j] * v[j];
            r[i] = s;
        }
        return r;
    }

    friend Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Real s = 0.0;
                for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    friend Mat4 operator+(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
        return r;
    }
    friend Mat4 operator*(Real s, const Mat4& a) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = s * a.m[i][j];
        return r;
    }

    Mat4 transposed() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    Real max_abs() const {
        Real v = 0.0;
        for (const auto& row : m)
            for (Real x : row) v = std::max(v, std::abs(x));
        return v;
    }
};

/// Symmetric 4x4 matrix; alias kept for intent at call sites.
using SymMat4 = Mat4;

/// Gram matrix of the metric itself, diag(-1,-1,1,1).
inline Mat4 metric_matrix() {
    Mat4 g;
    for (int i = 0; i < 4; ++i) g.m[i][i] = kSignature[static_cast<std::size_t>(i)];
    return g;
}

// --- Space-form membership ---------------------------------------------------

enum class SpaceFormKind { PseudoSphere, PseudoHyperbolic, HyperbolicSheet, None };

struct SpaceFormResult {
    SpaceFormKind kind = SpaceFormKind::None;
    // Set when kind is PseudoHyperbolic and the point additionally satisfies
    // the upper-sheet condition x1 > 0 (the hyperbolic 3-space as a subset).
    bool hyperbolic_sheet = false;
    Vec4 center{};
    Real radius = 0.0;
};

inline constexpr Real kMembershipTol = 1e-9;

/// Classifies p against the radius-r quadrics centred at m:
/// <p-m,p-m> = +r^2 (pseudo-sphere) or -r^2 (pseudo-hyperbolic space, with
/// the x1 > 0 sheet flagged separately).
inline SpaceFormResult space_form_membership(const Vec4& p, const Vec4& m, Real r) {
    if (!(r > 0.0)) throw NonPositiveRadius("space_form_membership: r must be > 0");
    const Vec4 d = p - m;
    const Real q = inner(d, d);
    const Real r2 = r * r;
    const Real tol = kMembershipTol * std::max(1.0, r2);
    SpaceFormResult res;
    res.center = m;
    res.radius = r;
    if (std::abs(q - r2) <= tol) {
        res.kind = SpaceFormKind::PseudoSphere;
    } else if (std::abs(q + r2) <= tol) {
        res.kind = SpaceFormKind::PseudoHyperbolic;
        res.hyperbolic_sheet = p.c1 > 0.0;
    }
    return res;
}

}  // namespace e24
