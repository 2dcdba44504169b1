#include "evofam/app.hpp"
#include "evofam/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace evofam;
using json = nlohmann::ordered_json;

namespace {

RunConfig quick(const std::string& family)
{
    RunConfig c;
    c.family = family;
    c.grid.n_time = 5;
    c.schedule.halvings = 5;
    c.threads = 1;
    return c;
}

json report_of(const CommandResult& r)
{
    REQUIRE_FALSE(r.report.empty());
    return json::parse(r.report);
}

} // namespace

TEST_SUITE("app")
{
    TEST_CASE("config files")
    {
        RunConfig c;
        apply_config_toml(c, R"(
family = "rotation:t"
interval = [0.0, 3.0]
seed = 17
threads = 2

[grid]
n_time = 7
radii = [0.3, 0.6]
n_angles = 32

[schedule]
halvings = 4

[tolerances]
ef3 = 1e-9

[bounds]
trials = 12
custom_scale = 1.5

[counterexample]
radius = 0.25
)");
        CHECK(c.family == "rotation:t");
        CHECK(c.interval->b == 3.0);
        CHECK(c.seed() == 17);
        CHECK(c.threads == 2);
        CHECK(c.grid.n_time == 7);
        CHECK(c.grid.radii == std::vector<double>{0.3, 0.6});
        CHECK(c.grid.n_angles == 32);
        CHECK(c.schedule.halvings == 4);
        CHECK(c.tolerances.ef3 == 1e-9);
        CHECK(c.trials == 12);
        CHECK(*c.custom_scale == 1.5);
        CHECK(c.witness_radius == 0.25);
        CHECK_NOTHROW(c.validate());

        RunConfig d;
        CHECK_THROWS_AS(apply_config_toml(d, "family = [1"), ConfigError);
        CHECK_THROWS_AS(apply_config_toml(d, "seed = -1"), ConfigError);
        CHECK_THROWS_AS(apply_config_toml(d, "interval = [1.0]"), ConfigError);
        CHECK_THROWS_AS(apply_config_toml(d, "[grid]\nradii = \"x\""), ConfigError);
        CHECK_THROWS_AS(apply_config_file(d, "/nonexistent/config.toml"), ConfigError);

        RunConfig e;
        e.grid.radii = {0.9, 0.5};
        CHECK_THROWS_AS(e.validate(), ConfigError);
        e = RunConfig{};
        e.tolerances.decay_ratio = 1.0;
        CHECK_THROWS_AS(e.validate(), ConfigError);
        e = RunConfig{};
        e.interval = Interval{1.0, 0.0};
        CHECK_THROWS_AS(e.validate(), ConfigError);
    }

    TEST_CASE("verify exit codes and report")
    {
        std::ostringstream log;
        const CommandResult ok = run_verify(quick("radial"), log);
        CHECK(ok.exit_code == exit_code::pass);
        const json r = report_of(ok);
        CHECK(r["command"] == "verify");
        CHECK(r["passed"] == true);
        CHECK(r["residuals"]["ef3"].get<double>() < 1e-14);
        CHECK(r["verdicts"]["ef3"]["passed"] == true);
        CHECK(r["hyperbolic_sup"].get<double>() == 0.0);

        const CommandResult bad = run_verify(quick("corrupted-demo"), log);
        CHECK(bad.exit_code == exit_code::failure);
        CHECK(report_of(bad)["verdicts"]["ef3"]["passed"] == false);

        RunConfig reversed = quick("radial");
        reversed.interval = Interval{1.0, 0.0};
        const CommandResult usage = run_verify(reversed, log);
        CHECK(usage.exit_code == exit_code::usage);
        CHECK(usage.report.empty());

        CHECK(run_verify(quick("no-such-family"), log).exit_code == exit_code::usage);

        const CommandResult lattice = run_verify(quick("hamel"), log);
        CHECK(lattice.exit_code == exit_code::pass);
        CHECK(report_of(lattice)["exact_audit"]["ef3"] == true);
    }

    TEST_CASE("scan verdicts")
    {
        std::ostringstream log;
        const CommandResult cont = run_scan(quick("radial"), log);
        CHECK(cont.exit_code == exit_code::pass);
        const json r = report_of(cont);
        CHECK(r["verdicts"]["joint_continuity"]["passed"] == true);
        CHECK(r["certificates"][0]["status"] == "certified");
        CHECK(r.contains("moduli"));
        CHECK(r.contains("tables"));

        const CommandResult jump = run_scan(quick("hamel"), log);
        CHECK(jump.exit_code == exit_code::failure);
        const json h = report_of(jump);
        CHECK(h["verdicts"]["joint_continuity"]["passed"] == false);
        CHECK(h["counterexample"]["gap"].get<double>() > 0.7);

        const CommandResult corrupt = run_scan(quick("corrupted-demo"), log);
        CHECK(corrupt.exit_code == exit_code::failure);
        CHECK(report_of(corrupt)["verdicts"]["joint_continuity"]["verdict"] == "not an evolution family on this grid");
    }

    TEST_CASE("bounds command")
    {
        std::ostringstream log;
        RunConfig c = quick("radial");
        c.trials = 100;
        c.grid.seed = 42;
        CHECK(run_bounds(c, log).exit_code == exit_code::pass);
        c.custom_scale = 1.01;
        const CommandResult bad = run_bounds(c, log);
        CHECK(bad.exit_code == exit_code::failure);
        CHECK(report_of(bad)["violation_count"].get<std::size_t>() > 0);
        c.custom_scale.reset();
        c.trials = 0;
        std::ostringstream warn;
        CHECK(run_bounds(c, warn).exit_code == exit_code::pass);
        CHECK_FALSE(warn.str().empty());
    }

    TEST_CASE("counterexample command")
    {
        std::ostringstream log;
        const CommandResult ok = run_counterexample(quick("radial"), log);
        CHECK(ok.exit_code == exit_code::pass);
        const json r = report_of(ok);
        CHECK(r["counterexample"]["gap"].get<double>() == doctest::Approx(0.7933533402912353));
        CHECK(r["verdicts"]["exact_axioms"]["passed"] == true);

        const std::string path = "evofam_test_linear_spec.toml";
        {
            std::ofstream out(path);
            out << "basis = [\"1\", \"sqrt2\"]\nimages = [2.0, 2.8284271247461903]\n";
        }
        RunConfig linear = quick("radial");
        linear.spec_path = path;
        const CommandResult none = run_counterexample(linear, log);
        CHECK(none.exit_code == exit_code::failure);
        CHECK(report_of(none)["counterexample"].is_null());

        {
            std::ofstream out(path);
            out << "basis = [\"1\", \"sqrt2\"\n";
        }
        CHECK(run_counterexample(linear, log).exit_code == exit_code::usage);
        std::remove(path.c_str());
    }

    TEST_CASE("reports are reproducible and thread independent")
    {
        std::ostringstream log;
        RunConfig c = quick("mobius-conjugated:radial");
        const std::string first = run_scan(c, log).report;
        CHECK(first == run_scan(c, log).report);
        c.threads = 3;
        CHECK(first == run_scan(c, log).report);
    }

    TEST_CASE("modulus csv")
    {
        ContinuityModulus m;
        m.deltas = {0.5, 0.25};
        m.radii = {0.5};
        m.moduli = {{0.125}, {0.1}};
        // 17 significant digits round-trip every double
        CHECK(modulus_csv(m) == "delta,radius,modulus\n0.5,0.5,0.125\n0.25,0.5,0.10000000000000001\n");
    }
}
