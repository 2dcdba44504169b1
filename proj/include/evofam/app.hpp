#pragma once

// Command implementations behind the evofam executable. Each command takes a
// RunConfig, writes its report, and returns the process exit code:
// 0 pass, 1 verdict failure, 2 usage or configuration error.

#include "evofam/diagnostics.hpp"
#include "evofam/evolution.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace evofam {

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
} // namespace exit_code

struct Tolerances {
    double ef2 = 1e-12;
    double ef3 = 1e-10;
    double ef3_iterative = 1e-8;  // families evaluated by Newton inversion
    double decay_ratio = 0.75;
    double decay_floor = 1e-9;
    double hyperbolic_margin = 1e-6;
};

struct RunConfig {
    std::string family = "radial";
    std::optional<Interval> interval;  // registry default when unset
    GridSpec grid;                     // grid.seed is the run seed
    ModulusSchedule schedule;
    Tolerances tolerances;
    std::optional<std::string> json_out;
    std::optional<std::string> csv_prefix;
    unsigned threads = 0;  // 0: hardware concurrency; EVOFAM_THREADS caps either way

    // bounds
    std::size_t trials = 1000;
    std::optional<double> custom_scale;

    // counterexample
    std::optional<std::string> spec_path;
    double witness_radius = 0.5;

    std::uint64_t seed() const { return grid.seed; }
    /// Throws ConfigError on settings that violate GridSpec, schedule or tolerance invariants.
    void validate() const;
};

/// Applies a TOML document to `config`. Keys: family, interval = [a, b], seed,
/// threads, [grid] n_time / radii / n_angles / n_disk_samples,
/// [schedule] first_fraction / halvings, [tolerances] ef2 / ef3 / ef3_iterative /
/// decay_ratio / decay_floor, [output] json / csv, [bounds] trials / custom_scale,
/// [counterexample] spec / radius. Throws ConfigError on malformed input.
void apply_config_toml(RunConfig& config, std::string_view toml_text);
void apply_config_file(RunConfig& config, const std::string& path);

/// Effective worker count: config.threads (or the hardware count), capped by EVOFAM_THREADS.
unsigned effective_threads(const RunConfig& config);

struct CommandResult {
    int exit_code = exit_code::pass;
    std::string report;  // JSON document, or empty when setup failed
};

/// Pure command bodies: build the report without touching the filesystem.
/// Human-readable progress and errors go to `log`.
CommandResult run_verify(const RunConfig& config, std::ostream& log);
CommandResult run_scan(const RunConfig& config, std::ostream& log);
CommandResult run_bounds(const RunConfig& config, std::ostream& log);
CommandResult run_counterexample(const RunConfig& config, std::ostream& log);

/// run_* plus output: the JSON report goes to config.json_out (stdout when
/// unset), modulus tables to <csv_prefix>_{right,left,joint}.csv.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_counterexample(const RunConfig& config, std::ostream& out, std::ostream& log);

/// CSV rows "delta,radius,modulus" for a modulus table, 17 significant digits.
std::string modulus_csv(const ContinuityModulus& modulus);

} // namespace evofam
