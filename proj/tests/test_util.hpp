#pragma once

#include "e24/clairaut.hpp"
#include "e24/metric.hpp"

namespace e24::testutil {

/// State at (0, 0, t0) with prescribed orthonormal velocity components.
inline GeodesicState state_from_u(const DiagonalMetric3& m, Real t0, Real u_a,
                                  Real u_b, Real u_t) {
    const auto c = m.coefficients_at(t0);
    return {0.0, 0.0, t0, u_a / c.A, u_b / c.B,
            u_t / std::sqrt(std::abs(c.gt))};
}

}  // namespace e24::testutil
