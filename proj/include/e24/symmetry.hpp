#pragma once

#include <cmath>
#include <functional>

#include "e24/errors.hpp"
#include "e24/linalg.hpp"

// The six rotation generators of the split metric, their one-parameter flows
// (hyperbolic and elliptic rotation matrices) and a flat-space Lie-derivative
// checker for the Killing condition. Coordinate slots are fixed as
// (xi, rho, theta, eta) = (c1, c2, c3, c4).

namespace e24 {

/// Weights of the six generators in the general linear isometry field
///   W = a(eta d_xi + xi d_eta) + b(theta d_rho + rho d_theta)
///     + c(theta d_xi + xi d_theta) + d(eta d_rho + rho d_eta)
///     + e(theta d_eta - eta d_theta) + f(xi d_rho - rho d_xi).
struct KillingCoefficients {
    Real a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;

    KillingCoefficients() = default;
    KillingCoefficients(Real a_, Real b_, Real c_, Real d_, Real e_, Real f_)
        : a(a_), b(b_), c(c_), d(d_), e(e_), f(f_) {
        for (Real w : {a, b, c, d, e, f}) {
            if (!std::isfinite(w) || w < 0.0) {
                throw DomainError(
                    "KillingCoefficients: weights must be finite and >= 0");
            }
        }
    }
};

/// The six one-parameter rotation subgroups. Omega1..Omega4 are hyperbolic
/// (cosh/sinh mixing), Omega5/Omega6 elliptic (cos/sin blocks).
enum class Generator { Omega1, Omega2, Omega3, Omega4, Omega5, Omega6 };

inline constexpr Generator kAllGenerators[6] = {
    Generator::Omega1, Generator::Omega2, Generator::Omega3,
    Generator::Omega4, Generator::Omega5, Generator::Omega6};

/// The 2x2 block slots (0-based) each generator mixes.
inline std::pair<int, int> generator_slots(Generator g) {
    switch (g) {
        case Generator::Omega1: return {0, 2};
        case Generator::Omega2: return {0, 3};
        case Generator::Omega3: return {1, 2};
        case Generator::Omega4: return {1, 3};
        case Generator::Omega5: return {0, 1};
        case Generator::Omega6: return {2, 3};
    }
    return {0, 0};
}

inline bool is_hyperbolic(Generator g) {
    return g != Generator::Omega5 && g != Generator::Omega6;
}

/// Constant Jacobian of W: W(p) = J p. Hard-coded analytically (W is linear).
inline Mat4 killing_jacobian(const KillingCoefficients& k) {
    Mat4 j;
    j(0, 3) += k.a;  j(3, 0) += k.a;   // a: slots (1,4)
    j(1, 2) += k.b;  j(2, 1) += k.b;   // b: slots (2,3)
    j(0, 2) += k.c;  j(2, 0) += k.c;   // c: slots (1,3)
    j(1, 3) += k.d;  j(3, 1) += k.d;   // d: slots (2,4)
    j(3, 2) += k.e;  j(2, 3) -= k.e;   // e: theta d_eta - eta d_theta
    j(1, 0) += k.f;  j(0, 1) -= k.f;   // f: xi d_rho - rho d_xi
    return j;
}

/// Evaluates the weighted generator field at p; linear in p and in the weights.
inline Vec4 killing_vector_at(const KillingCoefficients& k, const Vec4& p) {
    return killing_jacobian(k).apply(p);
}

/// One-parameter group element exp through the named subgroup. The elliptic
/// blocks follow the (cos, sin / -sin, cos) sign pattern of the elliptic
/// surface of rotation, so applying the flow to a profile point reproduces
/// that parametrization directly.
inline Mat4 flow_matrix(Generator g, Real angle) {
    Mat4 r = Mat4::identity();
    const auto [i, j] = generator_slots(g);
    if (is_hyperbolic(g)) {
        const Real ch = std::cosh(angle), sh = std::sinh(angle);
        r(i, i) = ch;
        r(i, j) = sh;
        r(j, i) = sh;
        r(j, j) = ch;
    } else {
        const Real co = std::cos(angle), si = std::sin(angle);
        r(i, i) = co;
        r(i, j) = si;
        r(j, i) = -si;
        r(j, j) = co;
    }
    return r;
}

/// Infinitesimal field of the flow, d/dtheta flow_matrix(g, theta)|_0 applied
/// to p. For the hyperbolic generators this equals the unit-weight term of
/// killing_vector_at; the elliptic flows run the e/f terms backwards.
inline Vec4 generator_field(Generator g, const Vec4& p) {
    const auto [i, j] = generator_slots(g);
    Vec4 r{};
    if (is_hyperbolic(g)) {
        r[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(i)];
    } else {
        r[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(j)] = -p[static_cast<std::size_t>(i)];
    }
    return r;
}

/// Flat-space Lie derivative of the metric along W for a constant Jacobian J:
/// (L_W g)_{uv} = g_{uz} J^z_v + g_{zv} J^z_u. W is Killing iff this vanishes.
inline SymMat4 lie_derivative_flat_from_jacobian(const Mat4& j) {
    const Mat4 gj = metric_matrix() * j;
    return gj + gj.transposed();
}

/// Exact Killing-condition matrix for the weighted generator field.
inline SymMat4 lie_derivative_flat(const KillingCoefficients& k,
                                   const Vec4& /*p*/) {
    // W is linear, so the Jacobian (and the result) is point-independent.
    return lie_derivative_flat_from_jacobian(killing_jacobian(k));
}

/// Killing-condition checker for an arbitrary vector field, with the Jacobian
/// taken by central differences at p. This is the numeric route used to
/// reject fields outside the six-generator span.
inline SymMat4 lie_derivative_flat(const std::function<Vec4(const Vec4&)>& field,
                                   const Vec4& p, Real h = 1e-6) {
    Mat4 j;
    for (int col = 0; col < 4; ++col) {
        Vec4 hi = p, lo = p;
        hi[static_cast<std::size_t>(col)] += h;
        lo[static_cast<std::size_t>(col)] -= h;
        const Vec4 d = field(hi) - field(lo);
        for (int row = 0; row < 4; ++row)
            j(row, col) = d[static_cast<std::size_t>(row)] / (2.0 * h);
    }
    return lie_derivative_flat_from_jacobian(j);
}

}  // namespace e24
