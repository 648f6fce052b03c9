#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "e24/io/commands.hpp"
#include "e24/io/config.hpp"
#include "e24/io/emit.hpp"
#include "e24/sweep.hpp"

namespace e24 {
namespace {

namespace fs = std::filesystem;

std::string temp_dir(const std::string& tag) {
    const auto d = fs::temp_directory_path() / ("e24_io_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

long count_lines(const std::string& text) {
    long n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

TEST(KeyValue, ParseBasics) {
    const auto kv = KeyValueFile::parse(
        "# comment\nfamily = upsilon2\n\nintegrate.h = 0.001  # trailing\n");
    EXPECT_EQ(kv.get_string("family"), "upsilon2");
    EXPECT_DOUBLE_EQ(kv.get_real("integrate.h"), 1e-3);
}

TEST(KeyValue, Errors) {
    EXPECT_THROW(KeyValueFile::parse("novalue\n"), ConfigError);
    EXPECT_THROW(KeyValueFile::parse("a = 1\na = 2\n"), ConfigError);
    const auto kv = KeyValueFile::parse("x = nope\n");
    EXPECT_THROW(kv.get_real("x"), ConfigError);
}

TEST(RunConfig, UnknownKeyRejected) {
    EXPECT_THROW(RunConfig::from_string("family = upsilon1\nbogus.key = 1\n"),
                 ConfigError);
}

TEST(RunConfig, ExactlyOneInitForm) {
    EXPECT_THROW(RunConfig::from_string(
                     "family = upsilon1\ninit.kind = state\ninit.phi = 0.3\n"),
                 ConfigError);
    EXPECT_THROW(RunConfig::from_string(
                     "family = upsilon1\ninit.kind = angles\ninit.va = 0.3\n"),
                 ConfigError);
    EXPECT_NO_THROW(RunConfig::from_string(
        "family = upsilon1\ninit.kind = angles\ninit.phi = 0.3\n"));
}

TEST(RunConfig, Validation) {
    EXPECT_THROW(RunConfig::from_string("family = upsilon1\nintegrate.h = 0\n"),
                 ConfigError);
    EXPECT_THROW(
        RunConfig::from_string("family = upsilon1\nintegrate.s_end = -1\n"),
        ConfigError);
    EXPECT_THROW(RunConfig::from_string("family = nope\n"), ConfigError);
}

TEST(RunConfig, RoundTripIsIdentity) {
    const std::string text =
        "family = upsilon2\n"
        "profile.kind = polynomial\n"
        "profile.poly_a = 20 0.7\n"
        "profile.poly_b = 22 0.7\n"
        "profile.t_min = -25\n"
        "profile.t_max = 25\n"
        "init.kind = angles\n"
        "init.phi = 0.9\n"
        "init.theta = 0.25\n"
        "init.t0 = 0\n"
        "integrate.s_end = 2.5\n"
        "integrate.h = 0.002\n"
        "variant = verbatim\n";
    const RunConfig a = RunConfig::from_string(text);
    const std::string ser_a = a.serialize();
    const RunConfig b = RunConfig::from_string(ser_a);
    EXPECT_EQ(ser_a, b.serialize());
    EXPECT_EQ(b.family, SurfaceFamily::S23);
    EXPECT_EQ(b.variant, FormulaVariant::Verbatim);
    EXPECT_DOUBLE_EQ(b.s_end, 2.5);
    EXPECT_TRUE(b.init.from_angles);
}

TEST(Csv, FormattingAndShape) {
    CsvWriter csv({"a", "b"});
    csv.append({1.0, 0.1});
    csv.append({-2.5e-17, 3.0});
    const std::string t = csv.text();
    EXPECT_EQ(t, "a,b\n1,0.10000000000000001\n-2.4999999999999999e-17,3\n");
    EXPECT_THROW(csv.append({1.0}), Error);
}

TEST(CmdSurface, SinglePointGrid) {
    const std::string dir = temp_dir("surf1");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon2\nprofile.kind = circular\n"
        "surface.t_min = 0.5\nsurface.t_max = 0.5\nsurface.nt = 1\n"
        "surface.s_min = 0.7\nsurface.s_max = 0.7\nsurface.ns = 1\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_surface(cfg, dir, log), kExitOk);
    const std::string csv = slurp(dir + "/run_mesh.csv");
    EXPECT_EQ(count_lines(csv), 2);  // header + one row
}

TEST(CmdSurface, FullGridDeviationSmall) {
    const std::string dir = temp_dir("surf2");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon2\nprofile.kind = circular\n"
        "surface.t_min = 0.2\nsurface.t_max = 1.2\nsurface.nt = 50\n"
        "surface.s_min = 0.3\nsurface.s_max = 1.3\nsurface.ns = 50\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_surface(cfg, dir, log), kExitOk);
    EXPECT_EQ(count_lines(slurp(dir + "/run_mesh.csv")), 2501);
    // Deviation summary line carries the worst closed-vs-numeric gap.
    const std::string out = log.str();
    const auto pos = out.find("deviation: ");
    ASSERT_NE(pos, std::string::npos);
    const double dev = std::stod(out.substr(pos + 11));
    EXPECT_LT(dev, 1e-4);
}

TEST(CmdSurface, DegenerateProfileExitsThree) {
    const std::string dir = temp_dir("surf3");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon1\nprofile.kind = constant\n"
        "profile.const_a = 1.5\nprofile.const_b = 1.5\n"
        "surface.t_min = 0.2\nsurface.t_max = 1.0\nsurface.nt = 5\n"
        "surface.s_min = 0.2\nsurface.s_max = 1.0\nsurface.ns = 5\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_surface(cfg, dir, log), kExitDegenerate);
    EXPECT_NE(log.str().find("null tangent direction"), std::string::npos);
}

TEST(CmdGeodesic, CatalogRunPasses) {
    const std::string dir = temp_dir("geo1");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon3\nprofile.kind = hyperbolic_sc\n"
        "profile.t_min = 0.2\nprofile.t_max = 60\n"
        "metric.arclength_normalized = true\n"
        "init.kind = angles\ninit.phi = 0.8\ninit.theta = 0.5\ninit.t0 = 1.2\n"
        "integrate.s_end = 6\nintegrate.record_stride = 50\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_geodesic(cfg, dir, false, log), kExitOk);
    const std::string csv = slurp(dir + "/run_trajectory.csv");
    EXPECT_NE(csv.find("s,a,b,t,va,vb,vt,E,p_a,p_b,clairaut1,clairaut2,V,phi,"
                       "theta,l"),
              std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir + "/run_trajectory.json"));
    EXPECT_EQ(j["termination"], "completed");
    EXPECT_LT(j["drift"]["E"].get<double>(), 1e-7);
}

TEST(CmdGeodesic, MeridianAnglesConstant) {
    const std::string dir = temp_dir("geo2");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon1\nprofile.kind = hyperbolic_sc\n"
        "profile.t_min = 0.2\nprofile.t_max = 60\n"
        "metric.arclength_normalized = true\n"
        "init.kind = state\ninit.a0 = 0.4\ninit.b0 = -0.2\ninit.t0 = 1\n"
        "init.vt = 1\nintegrate.s_end = 3\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_geodesic(cfg, dir, false, log), kExitOk);
    std::istringstream csv(slurp(dir + "/run_trajectory.csv"));
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string s, a, b;
        std::getline(row, s, ',');
        std::getline(row, a, ',');
        std::getline(row, b, ',');
        EXPECT_NEAR(std::stod(a), 0.4, 1e-12);
        EXPECT_NEAR(std::stod(b), -0.2, 1e-12);
    }
}

TEST(CmdGeodesic, EarlyTerminationExitCode) {
    const std::string dir = temp_dir("geo3");
    // Time-like family-2 run marches into the domain edge near the axis.
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon2\nprofile.kind = circular\n"
        "metric.arclength_normalized = true\n"
        "init.kind = angles\ninit.phi = 0.9\ninit.theta = 0.7\ninit.t0 = 0.7\n"
        "integrate.s_end = 10\ngeodesic.drift_threshold = 1\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_geodesic(cfg, dir, false, log), kExitEarlyTermination);
    const auto j = nlohmann::json::parse(slurp(dir + "/run_trajectory.json"));
    EXPECT_NE(j["termination"], "completed");
    std::ostringstream log2;
    EXPECT_EQ(cmd_geodesic(cfg, dir, true, log2), kExitOk);
}

TEST(CmdSweep, SingleNodeMatchesGeodesicRun) {
    const std::string dir = temp_dir("sweep1");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon1\nprofile.kind = hyperbolic_sc\n"
        "profile.t_min = 0.2\nprofile.t_max = 60\n"
        "metric.arclength_normalized = true\n"
        "init.kind = angles\ninit.phi = 0.9\ninit.theta = 0.4\ninit.t0 = 1\n"
        "integrate.s_end = 2\n"
        "sweep.phi_min = 0.9\nsweep.phi_max = 0.9\nsweep.phi_count = 1\n"
        "sweep.theta_min = 0.4\nsweep.theta_max = 0.4\nsweep.theta_count = 1\n");
    const auto rows = run_sweep(cfg, 2);
    ASSERT_EQ(rows.size(), 1u);
    const auto m = cfg.make_metric();
    const auto tr =
        integrate(m, cfg.make_initial_state(m), cfg.s_end, cfg.integrate);
    EXPECT_EQ(rows[0].reason, tr.reason);
    EXPECT_DOUBLE_EQ(rows[0].final_state.t, tr.samples.back().state.t);
    EXPECT_DOUBLE_EQ(rows[0].drift.E, tr.drift.E);
}

TEST(CmdSweep, ByteIdenticalAcrossWorkerCounts) {
    RunConfig cfg;
    cfg.family = SurfaceFamily::S56;
    cfg.profile_kind = "hyperbolic_sc";
    cfg.profile_t_min = 0.2;
    cfg.profile_t_max = 60.0;
    cfg.arclength_normalized = true;
    cfg.init.t0 = 1.2;
    cfg.s_end = 1.0;
    cfg.integrate.record_stride = 1 << 30;
    cfg.sweep = {0.2, 1.0, 5, 0.0, 0.8, 5};
    const std::string one = sweep_csv(run_sweep(cfg, 1));
    const std::string eight = sweep_csv(run_sweep(cfg, 8));
    EXPECT_EQ(one, eight);
    EXPECT_EQ(count_lines(one), 26);
}

TEST(CmdPlot, EmitsSvgCharts) {
    const std::string dir = temp_dir("plot1");
    RunConfig cfg = RunConfig::from_string(
        "family = upsilon3\nprofile.kind = hyperbolic_sc\n"
        "profile.t_min = 0.2\nprofile.t_max = 60\n"
        "metric.arclength_normalized = true\n"
        "init.kind = angles\ninit.phi = 0.8\ninit.theta = 0.5\ninit.t0 = 1.2\n"
        "integrate.s_end = 3\nintegrate.record_stride = 20\n");
    std::ostringstream log;
    EXPECT_EQ(cmd_plot(cfg, dir, log), kExitOk);
    const std::string drift = slurp(dir + "/run_drift.svg");
    const std::string orbit = slurp(dir + "/run_orbit.svg");
    EXPECT_NE(drift.find("<svg"), std::string::npos);
    EXPECT_NE(drift.find("polyline"), std::string::npos);
    EXPECT_NE(orbit.find("orbit"), std::string::npos);
}

TEST(Json, StableKeyOrder) {
    nlohmann::ordered_json j;
    j["zeta"] = 1;
    j["alpha"] = 2;
    const std::string s = j.dump();
    EXPECT_LT(s.find("zeta"), s.find("alpha"));  // insertion order preserved
}

}  // namespace
}  // namespace e24
