// evofam: evolution-family diagnostics from the command line.

#include "evofam/app.hpp"
#include "evofam/errors.hpp"
#include "evofam/registry.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

std::string catalog_text()
{
    std::ostringstream out;
    out << "Families:\n";
    for (const auto& entry : evofam::family_catalog())
        out << "  " << entry.pattern << "\n      " << entry.description << "\n";
    out << "\nExit codes: 0 pass, 1 verdict failure, 2 usage or configuration error.\n"
        << "EVOFAM_THREADS caps the number of scan threads.\n";
    return out.str();
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw evofam::ConfigError(std::string("bad ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

struct Flags {
    std::string config_file;
    std::string family;
    std::string interval;
    std::string radii;
    std::optional<std::size_t> grid;
    std::optional<int> angles;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string out;
    std::string csv;
    std::string spec;
    std::optional<std::size_t> trials;
    std::optional<double> custom_scale;
    std::optional<double> radius;
};

evofam::RunConfig resolve(const Flags& flags)
{
    evofam::RunConfig config;
    if (!flags.config_file.empty())
        evofam::apply_config_file(config, flags.config_file);
    if (!flags.family.empty())
        config.family = flags.family;
    if (!flags.interval.empty()) {
        const auto v = parse_list(flags.interval, "interval");
        if (v.size() != 2)
            throw evofam::ConfigError("--interval needs two numbers a,b");
        config.interval = evofam::Interval{v[0], v[1]};
    }
    if (!flags.radii.empty())
        config.grid.radii = parse_list(flags.radii, "radii");
    if (flags.grid)
        config.grid.n_time = *flags.grid;
    if (flags.angles)
        config.grid.n_angles = *flags.angles;
    if (flags.seed)
        config.grid.seed = *flags.seed;
    if (flags.threads)
        config.threads = *flags.threads;
    if (!flags.out.empty())
        config.json_out = flags.out;
    if (!flags.csv.empty())
        config.csv_prefix = flags.csv;
    if (!flags.spec.empty())
        config.spec_path = flags.spec;
    if (flags.trials)
        config.trials = *flags.trials;
    if (flags.custom_scale)
        config.custom_scale = *flags.custom_scale;
    if (flags.radius)
        config.witness_radius = *flags.radius;
    return config;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Diagnostics for evolution families of holomorphic self-maps of the unit disk"};
    app.footer(catalog_text());
    app.require_subcommand(1);

    Flags flags;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_file, "TOML run configuration (flags override it)");
        sub->add_option("--family", flags.family, "Registered family name (default: radial)");
        sub->add_option("--interval", flags.interval, "Time interval a,b (default: per family, usually 0,1)");
        sub->add_option("--grid", flags.grid, "Number of grid times (default: 9)");
        sub->add_option("--radii", flags.radii, "Comma-separated radius ladder (default: 0.25,0.5,0.75,0.9)");
        sub->add_option("--angles", flags.angles, "Sample points per circle (default: 64)");
        sub->add_option("--seed", flags.seed, "RNG seed, recorded in the report (default: 0)");
        sub->add_option("--threads", flags.threads, "Worker threads (default: hardware concurrency)");
        sub->add_option("--out", flags.out, "JSON report path (default: stdout)");
    };

    CLI::App* verify = app.add_subcommand("verify", "Check the evolution-family axioms on a grid");
    common(verify);
    CLI::App* scan = app.add_subcommand("scan", "Continuity moduli, diagonal limits and a heuristic verdict");
    common(scan);
    scan->add_option("--csv", flags.csv, "Prefix for <prefix>_{right,left,joint}.csv modulus tables");
    CLI::App* bounds = app.add_subcommand("bounds", "Randomized audit of the self-map bounds");
    common(bounds);
    bounds->add_option("--trials", flags.trials, "Number of random maps (default: 1000)");
    bounds->add_option("--custom-scale", flags.custom_scale, "Post-compose every map with k*z (k > 1 must fail)");
    CLI::App* counter = app.add_subcommand("counterexample", "Exact Hamel family and its discontinuity witness");
    common(counter);
    counter->add_option("--spec", flags.spec, "Hamel spec TOML (default: basis 1, sqrt2; images pi, 0)");
    counter->add_option("--radius", flags.radius, "Witness radius (default: 0.5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? evofam::exit_code::pass : evofam::exit_code::usage;
    }

    evofam::RunConfig config;
    try {
        config = resolve(flags);
    } catch (const evofam::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return evofam::exit_code::usage;
    }

    if (verify->parsed())
        return evofam::cmd_verify(config, std::cout, std::cerr);
    if (scan->parsed())
        return evofam::cmd_scan(config, std::cout, std::cerr);
    if (bounds->parsed())
        return evofam::cmd_bounds(config, std::cout, std::cerr);
    return evofam::cmd_counterexample(config, std::cout, std::cerr);
}
