#include "e24/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

namespace e24 {
namespace {

// Independent oracle: 4x4 determinant by full Laplace expansion along the
// first row. Used to check cross3 through <cross3(x,y,z),w> = det(w;x;y;z).
double det4(const std::array<Vec4, 4>& rows) {
    auto det3 = [](double a, double b, double c, double d, double e, double f,
                   double g, double h, double i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        std::array<double, 9> m{};
        int idx = 0;
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (c != k) m[static_cast<size_t>(idx++)] = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        const double minor =
            det3(m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8]);
        sum += ((k % 2 == 0) ? 1.0 : -1.0) * rows[0][static_cast<size_t>(k)] * minor;
    }
    return sum;
}

Vec4 random_vec(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng), d(rng), d(rng)};
}

TEST(Inner, SpecValues) {
    EXPECT_DOUBLE_EQ(inner({1, 0, 0, 0}, {1, 0, 0, 0}), -1.0);
    EXPECT_DOUBLE_EQ(inner({1, 1, 1, 1}, {1, 1, 1, 1}), 0.0);
    EXPECT_DOUBLE_EQ(inner({0, 0, 3, 4}, {0, 0, 3, 4}), 25.0);
}

TEST(Inner, GramMatrixIsSignature) {
    const Vec4 e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double expect = (i == j) ? kSignature[static_cast<size_t>(i)] : 0.0;
            EXPECT_EQ(inner(e[i], e[j]), expect);
        }
}

TEST(Inner, BilinearAndSymmetric) {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 200; ++n) {
        const Vec4 u = random_vec(rng), w = random_vec(rng), v = random_vec(rng);
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        const double a = d(rng), b = d(rng);
        EXPECT_NEAR(inner(a * u + b * w, v), a * inner(u, v) + b * inner(w, v),
                    1e-14);
        EXPECT_DOUBLE_EQ(inner(u, v), inner(v, u));
    }
}

TEST(Norm, SpecValues) {
    EXPECT_DOUBLE_EQ(norm({1, 0, 0, 0}), 1.0);
    EXPECT_DOUBLE_EQ(norm({1, 1, 1, 1}), 0.0);
    EXPECT_DOUBLE_EQ(norm({0, 0, 3, 4}), 5.0);
}

TEST(CausalClass, SpecValues) {
    EXPECT_EQ(causal_class({1, 0, 0, 0}), CausalClass::Timelike);
    EXPECT_EQ(causal_class({1, 0, 1, 0}), CausalClass::Null);
    EXPECT_EQ(causal_class({0, 0, 0, 0}), CausalClass::Zero);
    EXPECT_EQ(causal_class({0, 0, 2, 0}), CausalClass::Spacelike);
}

TEST(CausalClass, StableUnderRescaling) {
    const Vec4 null_dir{3, 4, 5, 0};  // -9-16+25 = 0
    for (double s : {1e-6, 1.0, 1e6}) {
        EXPECT_EQ(causal_class(s * null_dir), CausalClass::Null) << s;
    }
}

TEST(Vec4, RejectsNonFinite) {
    EXPECT_THROW(Vec4(std::nan(""), 0, 0, 0), DomainError);
    EXPECT_THROW(Vec4(0, INFINITY, 0, 0), DomainError);
}

TEST(Cross3, BasisExample) {
    // Hand cofactor expansion: i2 ^ i3 ^ i4 = (-1, 0, 0, 0).
    const Vec4 r = cross3({0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1});
    EXPECT_DOUBLE_EQ(r.c1, -1.0);
    EXPECT_DOUBLE_EQ(r.c2, 0.0);
    EXPECT_DOUBLE_EQ(r.c3, 0.0);
    EXPECT_DOUBLE_EQ(r.c4, 0.0);
}

TEST(Cross3, RepeatedArgumentVanishes) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 50; ++n) {
        const Vec4 x = random_vec(rng), z = random_vec(rng);
        const Vec4 r = cross3(x, x, z);
        EXPECT_NEAR(euclidean_sq(r), 0.0, 1e-28);
    }
}

TEST(Cross3, OrthogonalToArgumentsAndMatchesDeterminant) {
    std::mt19937_64 rng(42);
    for (int n = 0; n < 1000; ++n) {
        const Vec4 x = random_vec(rng), y = random_vec(rng), z = random_vec(rng);
        const Vec4 c = cross3(x, y, z);
        const double scale = std::max(1.0, std::sqrt(euclidean_sq(c)));
        EXPECT_LT(std::abs(inner(c, x)), 1e-10 * scale);
        EXPECT_LT(std::abs(inner(c, y)), 1e-10 * scale);
        EXPECT_LT(std::abs(inner(c, z)), 1e-10 * scale);
        // <cross3(x,y,z), w> equals the full determinant with w stacked on top.
        const Vec4 w = random_vec(rng);
        EXPECT_NEAR(inner(c, w), det4({w, x, y, z}), 1e-12);
    }
}

TEST(Cross3, AlternatingInAllArgumentPairs) {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 100; ++n) {
        const Vec4 x = random_vec(rng), y = random_vec(rng), z = random_vec(rng);
        const Vec4 a = cross3(x, y, z);
        const Vec4 swaps[3] = {cross3(y, x, z), cross3(z, y, x), cross3(x, z, y)};
        for (const Vec4& b : swaps) {
            for (int i = 0; i < 4; ++i)
                EXPECT_NEAR(a[static_cast<size_t>(i)], -b[static_cast<size_t>(i)], 1e-14);
        }
    }
}

TEST(SpaceForm, SpecValues) {
    const Vec4 origin{0, 0, 0, 0};
    const auto a = space_form_membership({0, 0, 1, 0}, origin, 1.0);
    EXPECT_EQ(a.kind, SpaceFormKind::PseudoSphere);

    const auto b = space_form_membership({1, 0, 0, 0}, origin, 1.0);
    EXPECT_EQ(b.kind, SpaceFormKind::PseudoHyperbolic);
    EXPECT_TRUE(b.hyperbolic_sheet);

    const auto b2 = space_form_membership({-1, 0, 0, 0}, origin, 1.0);
    EXPECT_EQ(b2.kind, SpaceFormKind::PseudoHyperbolic);
    EXPECT_FALSE(b2.hyperbolic_sheet);

    const auto c = space_form_membership({1, 1, 1, 1}, origin, 1.0);
    EXPECT_EQ(c.kind, SpaceFormKind::None);
}

TEST(SpaceForm, RejectsNonPositiveRadius) {
    EXPECT_THROW(space_form_membership({1, 0, 0, 0}, {0, 0, 0, 0}, 0.0),
                 NonPositiveRadius);
    EXPECT_THROW(space_form_membership({1, 0, 0, 0}, {0, 0, 0, 0}, -2.0),
                 NonPositiveRadius);
}

TEST(SpaceForm, OffCenterMembership) {
    const Vec4 m{0.3, -0.2, 1.0, 2.0};
    // p - m = (0,0,3,4): <d,d> = 25 = 5^2.
    const Vec4 p{0.3, -0.2, 4.0, 6.0};
    const auto r = space_form_membership(p, m, 5.0);
    EXPECT_EQ(r.kind, SpaceFormKind::PseudoSphere);
}

TEST(Mat4, ApplyAndMultiply) {
    Mat4 a = Mat4::identity();
    a(0, 2) = 2.0;
    const Vec4 v{1, 2, 3, 4};
    const Vec4 av = a.apply(v);
    EXPECT_DOUBLE_EQ(av.c1, 7.0);
    const Mat4 aa = a * a;
    EXPECT_DOUBLE_EQ(aa(0, 2), 4.0);
}

}  // namespace
}  // namespace e24
