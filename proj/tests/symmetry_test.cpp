#include "e24/symmetry.hpp"

#include <gtest/gtest.h>

#include <random>

namespace e24 {
namespace {

Vec4 random_vec(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng), d(rng), d(rng)};
}

KillingCoefficients random_coeffs(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(0.0, 3.0);
    return {d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
}

TEST(KillingField, SpecValues) {
    const Vec4 p{1, 2, 3, 4};
    {
        const Vec4 w = killing_vector_at({1, 0, 0, 0, 0, 0}, p);
        EXPECT_DOUBLE_EQ(w.c1, 4.0);
        EXPECT_DOUBLE_EQ(w.c2, 0.0);
        EXPECT_DOUBLE_EQ(w.c3, 0.0);
        EXPECT_DOUBLE_EQ(w.c4, 1.0);
    }
    {
        const Vec4 w = killing_vector_at({0, 0, 0, 0, 0, 1}, p);
        EXPECT_DOUBLE_EQ(w.c1, -2.0);
        EXPECT_DOUBLE_EQ(w.c2, 1.0);
        EXPECT_DOUBLE_EQ(w.c3, 0.0);
        EXPECT_DOUBLE_EQ(w.c4, 0.0);
    }
    {
        const Vec4 w = killing_vector_at({}, p);
        EXPECT_EQ(euclidean_sq(w), 0.0);
    }
}

TEST(KillingField, LinearInWeightsAndPoint) {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 100; ++n) {
        const Vec4 p = random_vec(rng), q = random_vec(rng);
        const auto k = random_coeffs(rng);
        const Vec4 sum = killing_vector_at(k, p + q);
        const Vec4 parts = killing_vector_at(k, p) + killing_vector_at(k, q);
        for (int i = 0; i < 4; ++i)
            EXPECT_NEAR(sum[static_cast<size_t>(i)], parts[static_cast<size_t>(i)], 1e-12);
    }
}

TEST(KillingCoefficients, RejectsNegativeWeights) {
    EXPECT_THROW(KillingCoefficients(-1, 0, 0, 0, 0, 0), DomainError);
    EXPECT_THROW(KillingCoefficients(0, 0, std::nan(""), 0, 0, 0), DomainError);
}

TEST(FlowMatrix, ZeroAngleIsIdentity) {
    for (Generator g : kAllGenerators) {
        const Mat4 m = flow_matrix(g, 0.0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                EXPECT_DOUBLE_EQ(m(i, j), i == j ? 1.0 : 0.0);
    }
}

TEST(FlowMatrix, GroupLaw) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (Generator g : kAllGenerators) {
        for (int n = 0; n < 50; ++n) {
            const double s = d(rng), t = d(rng);
            const Mat4 lhs = flow_matrix(g, s) * flow_matrix(g, t);
            const Mat4 rhs = flow_matrix(g, s + t);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    EXPECT_NEAR(lhs(i, j), rhs(i, j), 1e-12);
        }
    }
}

TEST(FlowMatrix, PreservesInnerProduct) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    for (Generator g : kAllGenerators) {
        for (int n = 0; n < 100; ++n) {
            const Mat4 m = flow_matrix(g, g == Generator::Omega2 && n == 0
                                              ? 0.7
                                              : ang(rng));
            const Vec4 v = random_vec(rng, -1, 1), w = random_vec(rng, -1, 1);
            EXPECT_NEAR(inner(m.apply(v), m.apply(w)), inner(v, w), 1e-12);
        }
    }
}

// Matrix-exponential oracle: flow_matrix(g, t) should equal exp(t G) where G
// is the generator's linear field, summed as a truncated series.
TEST(FlowMatrix, MatchesExponentialSeriesOracle) {
    for (Generator g : kAllGenerators) {
        Mat4 gen;
        for (int col = 0; col < 4; ++col) {
            Vec4 e{};
            e[static_cast<size_t>(col)] = 1.0;
            const Vec4 f = generator_field(g, e);
            for (int row = 0; row < 4; ++row) gen(row, col) = f[static_cast<size_t>(row)];
        }
        const double t = 0.83;
        Mat4 series = Mat4::identity();
        Mat4 term = Mat4::identity();
        for (int k = 1; k <= 30; ++k) {
            term = (t / k) * (term * gen);
            series = series + term;
        }
        const Mat4 closed = flow_matrix(g, t);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                EXPECT_NEAR(closed(i, j), series(i, j), 1e-13);
    }
}

TEST(FlowMatrix, DerivativeAtZeroMatchesGeneratorField) {
    std::mt19937_64 rng(31);
    const double h = 1e-6;
    for (Generator g : kAllGenerators) {
        for (int n = 0; n < 20; ++n) {
            const Vec4 p = random_vec(rng);
            const Vec4 hi = flow_matrix(g, h).apply(p);
            const Vec4 lo = flow_matrix(g, -h).apply(p);
            const Vec4 fd = (1.0 / (2.0 * h)) * (hi - lo);
            const Vec4 field = generator_field(g, p);
            for (int i = 0; i < 4; ++i)
                EXPECT_NEAR(fd[static_cast<size_t>(i)], field[static_cast<size_t>(i)], 1e-8);
        }
    }
}

// The hyperbolic flows differentiate to the matching unit-weight terms of the
// general field; the elliptic pair runs those terms with the opposite sign
// (the flow matches the surface parametrization's sign pattern).
TEST(FlowMatrix, GeneratorFieldVsKillingTerms) {
    std::mt19937_64 rng(37);
    struct Row {
        Generator g;
        KillingCoefficients k;
        double sign;
    };
    const Row rows[] = {
        {Generator::Omega1, {0, 0, 1, 0, 0, 0}, +1.0},
        {Generator::Omega2, {1, 0, 0, 0, 0, 0}, +1.0},
        {Generator::Omega3, {0, 1, 0, 0, 0, 0}, +1.0},
        {Generator::Omega4, {0, 0, 0, 1, 0, 0}, +1.0},
        {Generator::Omega5, {0, 0, 0, 0, 0, 1}, -1.0},
        {Generator::Omega6, {0, 0, 0, 0, 1, 0}, -1.0},
    };
    for (const Row& row : rows) {
        const Vec4 p = random_vec(rng);
        const Vec4 lhs = generator_field(row.g, p);
        const Vec4 rhs = row.sign * killing_vector_at(row.k, p);
        for (int i = 0; i < 4; ++i)
            EXPECT_NEAR(lhs[static_cast<size_t>(i)], rhs[static_cast<size_t>(i)], 1e-14);
    }
}

TEST(LieDerivative, VanishesForGeneratorFields) {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 100; ++n) {
        const auto k = random_coeffs(rng);
        const Vec4 p = random_vec(rng);
        EXPECT_LT(lie_derivative_flat(k, p).max_abs(), 1e-14);
    }
}

TEST(LieDerivative, ZeroCoefficientsGiveZero) {
    EXPECT_EQ(lie_derivative_flat(KillingCoefficients{}, {1, 1, 1, 1}).max_abs(),
              0.0);
}

TEST(LieDerivative, NegativeControlScalingField) {
    // Pure scaling of slot 1 is not an isometry: entry (1,1) must read -2.
    const auto field = [](const Vec4& p) { return Vec4{p.c1, 0, 0, 0}; };
    const SymMat4 l = lie_derivative_flat(field, {0.7, -0.3, 1.1, 0.4});
    EXPECT_NEAR(l(0, 0), -2.0, 1e-8);
    EXPECT_GT(l.max_abs(), 1.0);
}

TEST(LieDerivative, NumericRouteAgreesOnGeneratorFields) {
    std::mt19937_64 rng(43);
    for (int n = 0; n < 20; ++n) {
        const auto k = random_coeffs(rng);
        const Vec4 p = random_vec(rng);
        const auto field = [&](const Vec4& q) { return killing_vector_at(k, q); };
        EXPECT_LT(lie_derivative_flat(field, p).max_abs(), 1e-8);
    }
}

TEST(LieDerivative, ZeroOnCoordinateGrid) {
    std::mt19937_64 rng(47);
    const auto k = random_coeffs(rng);
    for (double x = -2.0; x <= 2.0; x += 0.4)
        for (double y = -2.0; y <= 2.0; y += 0.4) {
            // 2-D slice of the grid; the result is point-independent anyway.
            EXPECT_LT(lie_derivative_flat(k, {x, y, y, x}).max_abs(), 1e-14);
        }
}

}  // namespace
}  // namespace e24
