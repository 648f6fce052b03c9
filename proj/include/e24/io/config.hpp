#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "e24/clairaut.hpp"
#include "e24/errors.hpp"
#include "e24/geodesic.hpp"
#include "e24/metric.hpp"
#include "e24/profile.hpp"

// Flat key-value run configuration with dotted sections. Parsing rejects
// unknown keys outright; serialization emits sorted keys so that
// parse -> serialize -> parse is the identity.

namespace e24 {

struct ConfigError : Error {
    using Error::Error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string format_real(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Ordered key-value store produced by the parser.
class KeyValueFile {
  public:
    static KeyValueFile parse(const std::string& text) {
        KeyValueFile kv;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty key");
            if (kv.values_.count(key))
                throw ConfigError("duplicate config key '" + key + "'");
            kv.values_[key] = value;
        }
        return kv;
    }

    static KeyValueFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        mark_used(key);
        const auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError("missing required config key '" + key + "'");
        return it->second;
    }
    std::string get_string(const std::string& key, const std::string& dflt) const {
        mark_used(key);
        const auto it = values_.find(key);
        return it == values_.end() ? dflt : it->second;
    }
    Real get_real(const std::string& key) const { return to_real(key, get_string(key)); }
    Real get_real(const std::string& key, Real dflt) const {
        mark_used(key);
        const auto it = values_.find(key);
        return it == values_.end() ? dflt : to_real(key, it->second);
    }
    int get_int(const std::string& key, int dflt) const {
        mark_used(key);
        const auto it = values_.find(key);
        if (it == values_.end()) return dflt;
        try {
            std::size_t pos = 0;
            const int v = std::stoi(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected integer, got '" +
                              it->second + "'");
        }
    }
    bool get_bool(const std::string& key, bool dflt) const {
        mark_used(key);
        const auto it = values_.find(key);
        if (it == values_.end()) return dflt;
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw ConfigError("config key '" + key + "': expected true or false");
    }
    std::vector<Real> get_real_list(const std::string& key) const {
        std::istringstream in(get_string(key));
        std::vector<Real> out;
        std::string tok;
        while (in >> tok) out.push_back(to_real(key, tok));
        if (out.empty())
            throw ConfigError("config key '" + key + "': expected numbers");
        return out;
    }

    /// Every parsed key must have been consumed by a get_* call.
    void reject_unknown_keys() const {
        for (const auto& [key, value] : values_) {
            if (!used_.count(key))
                throw ConfigError("unknown config key '" + key + "'");
        }
    }

  private:
    static Real to_real(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const Real v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected number, got '" +
                              text + "'");
        }
    }
    void mark_used(const std::string& key) const { used_.insert(key); }

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

struct InitialCondition {
    bool from_angles = false;  // exactly one of the two forms is active
    Real a0 = 0.0, b0 = 0.0, t0 = 0.0;
    Real va = 0.0, vb = 0.0, vt = 0.0;  // raw-state form
    Real phi = 0.0, theta = 0.0;        // angle-chart form
};

struct SurfaceGrid {
    Real t_min, t_max, s_min, s_max;
    int nt = 1, ns = 1;
};

struct SweepGrid {
    Real phi_min = 0.0, phi_max = 1.0;
    int phi_count = 1;
    Real theta_min = 0.0, theta_max = 1.0;
    int theta_count = 1;
};

struct RunConfig {
    SurfaceFamily family = SurfaceFamily::S14;
    std::string profile_kind = "hyperbolic_sc";
    std::optional<Real> profile_t_min, profile_t_max;
    Real const_a = 1.0, const_b = 2.0;
    std::vector<Real> poly_a, poly_b;
    bool arclength_normalized = false;
    FormulaVariant variant = FormulaVariant::Corrected;

    InitialCondition init;
    IntegrateOptions integrate;
    Real s_end = 10.0;
    Real drift_threshold = 1e-7;

    // Linear angle path of the restricted surface, a(t) = a0 + a_rate t.
    Real path_a0 = 0.0, path_a_rate = 1.0, path_b0 = 0.0, path_b_rate = 1.0;
    SurfaceGrid surface{0.5, 1.0, 0.5, 1.0, 10, 10};
    SweepGrid sweep;
    std::string basename = "run";

    ProfileCurve make_profile() const {
        auto range = [&](Real dflt_lo, Real dflt_hi) {
            return std::pair<Real, Real>(profile_t_min.value_or(dflt_lo),
                                         profile_t_max.value_or(dflt_hi));
        };
        if (profile_kind == "hyperbolic_sc") {
            const auto [lo, hi] = range(0.2, 3.0);
            return ProfileCurve::hyperbolic_sc(family, lo, hi);
        }
        if (profile_kind == "hyperbolic_cs") {
            const auto [lo, hi] = range(0.2, 3.0);
            return ProfileCurve::hyperbolic_cs(family, lo, hi);
        }
        if (profile_kind == "circular") {
            const auto [lo, hi] = range(0.1, 1.47);
            return ProfileCurve::circular(family, lo, hi);
        }
        if (profile_kind == "constant")
            return ProfileCurve::constant(family, const_a, const_b);
        if (profile_kind == "polynomial") {
            if (poly_a.empty() || poly_b.empty())
                throw ConfigError("polynomial profile requires profile.poly_a "
                                  "and profile.poly_b");
            const auto [lo, hi] = range(-1.0, 1.0);
            return ProfileCurve::polynomial(family, poly_a, poly_b, lo, hi);
        }
        throw ConfigError("unknown profile.kind '" + profile_kind + "'");
    }

    DiagonalMetric3 make_metric() const {
        return induced_metric3(family, make_profile(), arclength_normalized);
    }

    AnglePath make_path() const {
        return AnglePath::linear(path_a0, path_a_rate, path_b0, path_b_rate);
    }

    GeodesicState make_initial_state(const DiagonalMetric3& m) const {
        if (init.from_angles)
            return make_unit_speed_state(m, init.a0, init.b0, init.t0, init.phi,
                                         init.theta);
        return {init.a0, init.b0, init.t0, init.va, init.vb, init.vt};
    }

    static SurfaceFamily family_from_string(const std::string& name) {
        if (name == "upsilon1") return SurfaceFamily::S14;
        if (name == "upsilon2") return SurfaceFamily::S23;
        if (name == "upsilon3") return SurfaceFamily::S56;
        throw ConfigError("unknown family '" + name +
                          "' (expected upsilon1|upsilon2|upsilon3)");
    }

    static RunConfig from_kv(const KeyValueFile& kv) {
        RunConfig c;
        c.family = family_from_string(kv.get_string("family"));
        c.profile_kind = kv.get_string("profile.kind", "hyperbolic_sc");
        if (kv.has("profile.t_min")) c.profile_t_min = kv.get_real("profile.t_min");
        if (kv.has("profile.t_max")) c.profile_t_max = kv.get_real("profile.t_max");
        c.const_a = kv.get_real("profile.const_a", 1.0);
        c.const_b = kv.get_real("profile.const_b", 2.0);
        if (kv.has("profile.poly_a")) c.poly_a = kv.get_real_list("profile.poly_a");
        if (kv.has("profile.poly_b")) c.poly_b = kv.get_real_list("profile.poly_b");
        c.arclength_normalized = kv.get_bool("metric.arclength_normalized", false);
        const std::string variant = kv.get_string("variant", "corrected");
        if (variant == "verbatim")
            c.variant = FormulaVariant::Verbatim;
        else if (variant == "corrected")
            c.variant = FormulaVariant::Corrected;
        else
            throw ConfigError("variant must be verbatim or corrected");

        const std::string init_kind = kv.get_string("init.kind", "state");
        c.init.a0 = kv.get_real("init.a0", 0.0);
        c.init.b0 = kv.get_real("init.b0", 0.0);
        c.init.t0 = kv.get_real("init.t0", 1.0);
        if (init_kind == "state") {
            c.init.from_angles = false;
            for (const char* k : {"init.phi", "init.theta"})
                if (kv.has(k))
                    throw ConfigError(std::string("config key '") + k +
                                      "' requires init.kind = angles");
            c.init.va = kv.get_real("init.va", 0.0);
            c.init.vb = kv.get_real("init.vb", 0.0);
            c.init.vt = kv.get_real("init.vt", 0.0);
        } else if (init_kind == "angles") {
            c.init.from_angles = true;
            for (const char* k : {"init.va", "init.vb", "init.vt"})
                if (kv.has(k))
                    throw ConfigError(std::string("config key '") + k +
                                      "' requires init.kind = state");
            c.init.phi = kv.get_real("init.phi", 0.5);
            c.init.theta = kv.get_real("init.theta", 0.0);
        } else {
            throw ConfigError("init.kind must be state or angles");
        }

        c.integrate.h = kv.get_real("integrate.h", 1e-3);
        if (!(c.integrate.h > 0.0)) throw ConfigError("integrate.h must be > 0");
        c.integrate.adaptive = kv.get_bool("integrate.adaptive", false);
        c.integrate.tol = kv.get_real("integrate.tol", 1e-10);
        c.integrate.record_stride =
            std::max(1, kv.get_int("integrate.record_stride", 1));
        c.integrate.axis_guard = kv.get_real("integrate.axis_guard", 1e-2);
        c.s_end = kv.get_real("integrate.s_end", 10.0);
        if (!(c.s_end > 0.0)) throw ConfigError("integrate.s_end must be > 0");
        c.drift_threshold = kv.get_real("geodesic.drift_threshold", 1e-7);

        c.path_a0 = kv.get_real("path.a0", 0.0);
        c.path_a_rate = kv.get_real("path.a_rate", 1.0);
        c.path_b0 = kv.get_real("path.b0", 0.0);
        c.path_b_rate = kv.get_real("path.b_rate", 1.0);

        c.surface.t_min = kv.get_real("surface.t_min", 0.5);
        c.surface.t_max = kv.get_real("surface.t_max", 1.0);
        c.surface.s_min = kv.get_real("surface.s_min", 0.5);
        c.surface.s_max = kv.get_real("surface.s_max", 1.0);
        c.surface.nt = kv.get_int("surface.nt", 10);
        c.surface.ns = kv.get_int("surface.ns", 10);
        if (c.surface.nt < 1 || c.surface.ns < 1)
            throw ConfigError("surface grid counts must be >= 1");

        c.sweep.phi_min = kv.get_real("sweep.phi_min", 0.2);
        c.sweep.phi_max = kv.get_real("sweep.phi_max", 1.2);
        c.sweep.phi_count = kv.get_int("sweep.phi_count", 10);
        c.sweep.theta_min = kv.get_real("sweep.theta_min", 0.0);
        c.sweep.theta_max = kv.get_real("sweep.theta_max", 1.0);
        c.sweep.theta_count = kv.get_int("sweep.theta_count", 10);
        if (c.sweep.phi_count < 1 || c.sweep.theta_count < 1)
            throw ConfigError("sweep grid counts must be >= 1");

        c.basename = kv.get_string("output.basename", "run");
        kv.reject_unknown_keys();
        return c;
    }

    static RunConfig from_string(const std::string& text) {
        return from_kv(KeyValueFile::parse(text));
    }
    static RunConfig from_file(const std::string& path) {
        return from_kv(KeyValueFile::parse_file(path));
    }

    std::string serialize() const {
        std::map<std::string, std::string> kv;
        kv["family"] = family_name(family);
        kv["profile.kind"] = profile_kind;
        if (profile_t_min) kv["profile.t_min"] = detail::format_real(*profile_t_min);
        if (profile_t_max) kv["profile.t_max"] = detail::format_real(*profile_t_max);
        if (profile_kind == "constant") {
            kv["profile.const_a"] = detail::format_real(const_a);
            kv["profile.const_b"] = detail::format_real(const_b);
        }
        auto join = [](const std::vector<Real>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ' ';
                s += detail::format_real(v[i]);
            }
            return s;
        };
        if (!poly_a.empty()) kv["profile.poly_a"] = join(poly_a);
        if (!poly_b.empty()) kv["profile.poly_b"] = join(poly_b);
        kv["metric.arclength_normalized"] = arclength_normalized ? "true" : "false";
        kv["variant"] =
            variant == FormulaVariant::Verbatim ? "verbatim" : "corrected";
        kv["init.kind"] = init.from_angles ? "angles" : "state";
        kv["init.a0"] = detail::format_real(init.a0);
        kv["init.b0"] = detail::format_real(init.b0);
        kv["init.t0"] = detail::format_real(init.t0);
        if (init.from_angles) {
            kv["init.phi"] = detail::format_real(init.phi);
            kv["init.theta"] = detail::format_real(init.theta);
        } else {
            kv["init.va"] = detail::format_real(init.va);
            kv["init.vb"] = detail::format_real(init.vb);
            kv["init.vt"] = detail::format_real(init.vt);
        }
        kv["integrate.h"] = detail::format_real(integrate.h);
        kv["integrate.adaptive"] = integrate.adaptive ? "true" : "false";
        kv["integrate.tol"] = detail::format_real(integrate.tol);
        kv["integrate.record_stride"] = std::to_string(integrate.record_stride);
        kv["integrate.axis_guard"] = detail::format_real(integrate.axis_guard);
        kv["integrate.s_end"] = detail::format_real(s_end);
        kv["geodesic.drift_threshold"] = detail::format_real(drift_threshold);
        kv["path.a0"] = detail::format_real(path_a0);
        kv["path.a_rate"] = detail::format_real(path_a_rate);
        kv["path.b0"] = detail::format_real(path_b0);
        kv["path.b_rate"] = detail::format_real(path_b_rate);
        kv["surface.t_min"] = detail::format_real(surface.t_min);
        kv["surface.t_max"] = detail::format_real(surface.t_max);
        kv["surface.s_min"] = detail::format_real(surface.s_min);
        kv["surface.s_max"] = detail::format_real(surface.s_max);
        kv["surface.nt"] = std::to_string(surface.nt);
        kv["surface.ns"] = std::to_string(surface.ns);
        kv["sweep.phi_min"] = detail::format_real(sweep.phi_min);
        kv["sweep.phi_max"] = detail::format_real(sweep.phi_max);
        kv["sweep.phi_count"] = std::to_string(sweep.phi_count);
        kv["sweep.theta_min"] = detail::format_real(sweep.theta_min);
        kv["sweep.theta_max"] = detail::format_real(sweep.theta_max);
        kv["sweep.theta_count"] = std::to_string(sweep.theta_count);
        kv["output.basename"] = basename;
        std::string out;
        for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
        return out;
    }
};

}  // namespace e24
