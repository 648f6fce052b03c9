#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "e24/errors.hpp"
#include "e24/linalg.hpp"

// Generating curves and angle paths. Profiles ship as a small catalog with
// exact derivative evaluators (hyperbolic pair, circular pair, constant pair,
// polynomial pairs); every constructed evaluator is self-checked against
// central finite differences once at build time.

namespace e24 {

/// Scalar function with exact first and second derivative evaluators.
struct ScalarFn {
    std::function<Real(Real)> v, d1, d2;

    static ScalarFn zero() {
        auto z = [](Real) { return 0.0; };
        return {z, z, z};
    }
    static ScalarFn constant(Real c) {
        auto z = [](Real) { return 0.0; };
        return {[c](Real) { return c; }, z, z};
    }
    static ScalarFn sinh_fn() {
        return {[](Real t) { return std::sinh(t); },
                [](Real t) { return std::cosh(t); },
                [](Real t) { return std::sinh(t); }};
    }
    static ScalarFn cosh_fn() {
        return {[](Real t) { return std::cosh(t); },
                [](Real t) { return std::sinh(t); },
                [](Real t) { return std::cosh(t); }};
    }
    static ScalarFn sin_fn() {
        return {[](Real t) { return std::sin(t); },
                [](Real t) { return std::cos(t); },
                [](Real t) { return -std::sin(t); }};
    }
    static ScalarFn cos_fn() {
        return {[](Real t) { return std::cos(t); },
                [](Real t) { return -std::sin(t); },
                [](Real t) { return -std::cos(t); }};
    }
    /// Polynomial sum_k coeffs[k] t^k with derivatives by coefficient shift.
    static ScalarFn polynomial(std::vector<Real> coeffs) {
        auto eval = [](const std::vector<Real>& c, Real t) {
            Real acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
        auto derive = [](const std::vector<Real>& c) {
            std::vector<Real> d;
            for (std::size_t k = 1; k < c.size(); ++k)
                d.push_back(static_cast<Real>(k) * c[k]);
            return d;
        };
        const std::vector<Real> c1 = derive(coeffs);
        const std::vector<Real> c2 = derive(c1);
        return {[c = std::move(coeffs), eval](Real t) { return eval(c, t); },
                [c1, eval](Real t) { return eval(c1, t); },
                [c2, eval](Real t) { return eval(c2, t); }};
    }
};

/// Checks d1/d2 of fn against central differences of v on a few sample points.
inline void self_check_derivatives(const ScalarFn& fn, Real lo, Real hi,
                                   const std::string& what) {
    const Real h = 1e-5;
    for (int i = 1; i <= 5; ++i) {
        const Real t = lo + (hi - lo) * static_cast<Real>(i) / 6.0;
        const Real fd1 = (fn.v(t + h) - fn.v(t - h)) / (2.0 * h);
        const Real fd2 = (fn.v(t + h) - 2.0 * fn.v(t) + fn.v(t - h)) / (h * h);
        const Real s1 = std::max({1.0, std::abs(fd1), std::abs(fn.d1(t))});
        const Real s2 = std::max({1.0, std::abs(fd2), std::abs(fn.d2(t))});
        if (std::abs(fn.d1(t) - fd1) > 1e-6 * s1 ||
            std::abs(fn.d2(t) - fd2) > 1e-4 * s2) {
            throw DomainError(what + ": derivative evaluators disagree with "
                                     "finite differences");
        }
    }
}

enum class SurfaceFamily { S14, S23, S56 };

/// Which reading of the printed closed-form expressions to evaluate: the
/// literal text, or the assembly the numeric oracle confirms.
enum class FormulaVariant { Verbatim, Corrected };

/// The two coordinate slots (0-based) that carry the family's planar pair.
inline std::pair<int, int> family_slots(SurfaceFamily fam) {
    switch (fam) {
        case SurfaceFamily::S14: return {0, 3};
        case SurfaceFamily::S23: return {0, 1};
        case SurfaceFamily::S56: return {1, 3};
    }
    return {0, 0};
}

inline const char* family_name(SurfaceFamily fam) {
    switch (fam) {
        case SurfaceFamily::S14: return "upsilon1";
        case SurfaceFamily::S23: return "upsilon2";
        case SurfaceFamily::S56: return "upsilon3";
    }
    return "?";
}

/// Generating curve (f1,f2,f3,f4) with first/second derivatives and a declared
/// parameter interval. Slots outside the active pattern evaluate to exact 0.
class ProfileCurve {
  public:
    ProfileCurve(std::array<ScalarFn, 4> slots, Real t_min, Real t_max,
                 std::string id = "custom")
        : slots_(std::move(slots)), t_min_(t_min), t_max_(t_max),
          id_(std::move(id)) {
        if (!(t_min < t_max))
            throw DomainError("ProfileCurve: empty parameter interval");
        for (int i = 0; i < 4; ++i)
            self_check_derivatives(slots_[static_cast<std::size_t>(i)], t_min,
                                   t_max, "profile slot " + std::to_string(i + 1));
    }

    /// Planar pair (fa, fb) placed into the family's active slots.
    static ProfileCurve planar(SurfaceFamily fam, ScalarFn fa, ScalarFn fb,
                               Real t_min, Real t_max, std::string id = "custom") {
        std::array<ScalarFn, 4> s{ScalarFn::zero(), ScalarFn::zero(),
                                  ScalarFn::zero(), ScalarFn::zero()};
        const auto [ia, ib] = family_slots(fam);
        s[static_cast<std::size_t>(ia)] = std::move(fa);
        s[static_cast<std::size_t>(ib)] = std::move(fb);
        return ProfileCurve(std::move(s), t_min, t_max, std::move(id));
    }

    // Catalog entries.
    static ProfileCurve hyperbolic_sc(SurfaceFamily fam, Real t_min = 0.2,
                                      Real t_max = 3.0) {
        return planar(fam, ScalarFn::sinh_fn(), ScalarFn::cosh_fn(), t_min,
                      t_max, "hyperbolic_sc");
    }
    static ProfileCurve hyperbolic_cs(SurfaceFamily fam, Real t_min = 0.2,
                                      Real t_max = 3.0) {
        return planar(fam, ScalarFn::cosh_fn(), ScalarFn::sinh_fn(), t_min,
                      t_max, "hyperbolic_cs");
    }
    static ProfileCurve circular(SurfaceFamily fam, Real t_min = 0.1,
                                 Real t_max = 1.47) {
        return planar(fam, ScalarFn::cos_fn(), ScalarFn::sin_fn(), t_min, t_max,
                      "circular");
    }
    static ProfileCurve constant(SurfaceFamily fam, Real ca, Real cb) {
        return planar(fam, ScalarFn::constant(ca), ScalarFn::constant(cb), -10.0,
                      10.0, "constant");
    }
    static ProfileCurve polynomial(SurfaceFamily fam, std::vector<Real> ca,
                                   std::vector<Real> cb, Real t_min, Real t_max) {
        return planar(fam, ScalarFn::polynomial(std::move(ca)),
                      ScalarFn::polynomial(std::move(cb)), t_min, t_max,
                      "polynomial");
    }

    Real value(int slot, Real s) const { return eval(slot, s).v(s); }
    Real d1(int slot, Real s) const { return eval(slot, s).d1(s); }
    Real d2(int slot, Real s) const { return eval(slot, s).d2(s); }

    Real t_min() const { return t_min_; }
    Real t_max() const { return t_max_; }
    const std::string& id() const { return id_; }

    bool in_domain(Real s) const { return s >= t_min_ && s <= t_max_; }
    void require_in_domain(Real s) const {
        if (!in_domain(s))
            throw DomainError("profile parameter outside declared interval");
    }

    /// True when all slots outside the family's pair are identically zero
    /// (checked at the interval endpoints and midpoint).
    bool matches_pattern(SurfaceFamily fam) const {
        const auto [ia, ib] = family_slots(fam);
        for (int i = 0; i < 4; ++i) {
            if (i == ia || i == ib) continue;
            for (Real s : {t_min_, 0.5 * (t_min_ + t_max_), t_max_}) {
                if (slots_[static_cast<std::size_t>(i)].v(s) != 0.0) return false;
            }
        }
        return true;
    }

    Vec4 point(Real s) const {
        require_in_domain(s);
        return {slots_[0].v(s), slots_[1].v(s), slots_[2].v(s), slots_[3].v(s)};
    }

  private:
    const ScalarFn& eval(int slot, Real s) const {
        if (slot < 1 || slot > 4)
            throw DomainError("profile slot index must be 1..4");
        require_in_domain(s);
        return slots_[static_cast<std::size_t>(slot - 1)];
    }

    std::array<ScalarFn, 4> slots_;
    Real t_min_, t_max_;
    std::string id_;
};

/// Pair of angle evaluators (a(t), b(t)) with derivatives, used to restrict
/// the two-angle immersion to a 2-surface.
class AnglePath {
  public:
    AnglePath(ScalarFn a, ScalarFn b, std::string id = "custom")
        : a_(std::move(a)), b_(std::move(b)), id_(std::move(id)) {
        self_check_derivatives(a_, -2.0, 2.0, "angle path a");
        self_check_derivatives(b_, -2.0, 2.0, "angle path b");
    }

    static AnglePath linear(Real a0, Real arate, Real b0, Real brate) {
        return AnglePath(ScalarFn::polynomial({a0, arate}),
                         ScalarFn::polynomial({b0, brate}), "linear");
    }
    static AnglePath constant(Real a0, Real b0) {
        return AnglePath(ScalarFn::constant(a0), ScalarFn::constant(b0),
                         "constant");
    }
    static AnglePath polynomial(std::vector<Real> ca, std::vector<Real> cb) {
        return AnglePath(ScalarFn::polynomial(std::move(ca)),
                         ScalarFn::polynomial(std::move(cb)), "polynomial");
    }

    Real a(Real t) const { return a_.v(t); }
    Real b(Real t) const { return b_.v(t); }
    Real da(Real t) const { return a_.d1(t); }
    Real db(Real t) const { return b_.d1(t); }
    Real dda(Real t) const { return a_.d2(t); }
    Real ddb(Real t) const { return b_.d2(t); }
    const std::string& id() const { return id_; }

  private:
    ScalarFn a_, b_;
    std::string id_;
};

}  // namespace e24
