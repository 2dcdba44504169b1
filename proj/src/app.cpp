#include "evofam/app.hpp"

#include "evofam/audit.hpp"
#include "evofam/errors.hpp"
#include "evofam/format.hpp"
#include "evofam/hamel.hpp"
#include "evofam/registry.hpp"

#include <json.hpp>
#include <toml.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace evofam {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const GridSpec& grid)
{
    return {{"n_time", grid.n_time},
            {"radii", grid.radii},
            {"n_angles", grid.n_angles},
            {"n_disk_samples", grid.n_disk_samples}};
}

json to_json(const ModulusSchedule& schedule)
{
    return {{"first_fraction", schedule.first_fraction}, {"halvings", schedule.halvings}};
}

json to_json(const hamel::TimeVector& t)
{
    json coords = json::array();
    for (const auto& q : t.coords())
        coords.push_back(q.str());
    return {{"coords", coords}, {"real", t.real_value()}};
}


json verdict(bool passed, double value, double threshold, const GridSpec& grid)
{
    return {{"passed", passed}, {"value", value}, {"threshold", threshold}, {"grid", to_json(grid)}};
}

struct DecayCheck {
    bool passed = true;
    double worst_ratio = 0.0;

    void add(const std::vector<double>& seq, const Tolerances& tol)
    {
        passed = decays(seq, tol.decay_ratio, tol.decay_floor) && passed;
        detail::raise_max(worst_ratio, worst_decay_ratio(seq, tol.decay_floor));
    }
};

DecayCheck modulus_decay(const ContinuityModulus& m, const Tolerances& tol, bool scalars)
{
    DecayCheck check;
    for (std::size_t j = 0; j < m.radii.size(); ++j)
        check.add(m.at_radius(j), tol);
    if (scalars) {
        check.add(m.value_moduli, tol);
        check.add(m.derivative_moduli, tol);
    }
    return check;
}

json to_json(const ContinuityModulus& m, const DecayCheck& decay)
{
    json out{{"deltas", m.deltas}, {"radii", m.radii}, {"moduli", m.moduli}};
    if (!m.value_moduli.empty()) {
        out["value_moduli"] = m.value_moduli;
        out["derivative_moduli"] = m.derivative_moduli;
    }
    out["worst_ratio"] = decay.worst_ratio;
    out["decays"] = decay.passed;
    return out;
}

json to_json(const DiagonalProfile& d, const DecayCheck& decay)
{
    return {{"deltas", d.deltas},
            {"centers", d.centers},
            {"value_deviation", d.value_deviation},
            {"derivative_deviation", d.derivative_deviation},
            {"worst_ratio", decay.worst_ratio},
            {"decays", decay.passed}};
}

json to_json(const UnivalenceCertificate& c)
{
    double weakest = 1.0;
    for (const double r : c.ratios)
        weakest = std::min(weakest, r);
    return {{"status", "certified"},
            {"s0", c.s0},
            {"t0", c.t0},
            {"radius", c.radius},
            {"z0", to_json(c.z0)},
            {"sigma", c.sigma},
            {"landau_radius", c.landau_radius},
            {"steps", c.steps()},
            {"min_ratio", weakest},
            {"subdivision", c.subdivision}};
}

json to_json(const hamel::DiscontinuityWitness& w)
{
    json times = json::array();
    for (const auto& t : w.times)
        times.push_back(to_json(t));
    return {{"radius", w.radius},
            {"limit", to_json(w.limit)},
            {"times", times},
            {"right_distances", w.right_distances},
            {"left_distances", w.left_distances},
            {"gap", w.gap},
            {"left_gap", w.left_gap}};
}

json to_json(const hamel::AdditiveSpec& spec, const hamel::HamelSpecFile* file)
{
    json basis = json::array();
    for (const auto& e : spec.basis->elements())
        basis.push_back(e.name);
    json out{{"basis", basis}, {"images", spec.images}, {"image_labels", spec.image_labels}};
    if (file) {
        out["start"] = to_json(file->start);
        out["end"] = to_json(file->end);
    }
    return out;
}

json to_json(const hamel::ExactAxiomAudit& a)
{
    return {{"triples", a.triples},
            {"ef1", a.ef1},
            {"ef2", a.ef2},
            {"ef3", a.ef3},
            {"float_mismatch", a.float_mismatch},
            {"rounded_sum_mismatch", a.rounded_sum_mismatch}};
}

json report_header(const char* command, const RunConfig& config, const std::string& family)
{
    return {{"command", command},
            {"family", family},
            {"grid", to_json(config.grid)},
            {"schedule", to_json(config.schedule)},
            {"seed", config.seed()}};
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

template <class Fn>
CommandResult guarded_setup(std::ostream& log, Fn&& fn)
{
    try {
        return fn();
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        log << "error: " << e.what() << "\n";
    } catch (const IntervalMismatch& e) {
        log << "error: " << e.what() << "\n";
    } catch (const LatticeError& e) {
        log << "error: " << e.what() << "\n";
    } catch (const BasisMismatch& e) {
        log << "error: " << e.what() << "\n";
    }
    return {exit_code::usage, {}};
}

struct Residuals {
    NonConstancyAudit ef1{};
    double ef2 = 0.0;
    double ef3 = 0.0;
    double hyperbolic_sup = 0.0;
    double ef3_tolerance = 0.0;
};

template <class F>
Residuals residuals_of(const F& family, const RunConfig& config, Parallelism par, bool iterative)
{
    Residuals r;
    r.ef1 = nonconstancy_audit(family, config.grid);
    r.ef2 = identity_residual(family, config.grid);
    r.ef3 = semigroup_residual(family, config.grid, par);
    r.hyperbolic_sup = hyperbolic_bound_sup(family, config.grid, par);
    r.ef3_tolerance = iterative ? config.tolerances.ef3_iterative : config.tolerances.ef3;
    return r;
}

bool axioms_pass(const Residuals& r, const Tolerances& tol)
{
    return r.ef1.passed && r.ef2 < tol.ef2 && r.ef3 < r.ef3_tolerance;
}

void put_residuals(json& report, const Residuals& r, const RunConfig& config)
{
    const Tolerances& tol = config.tolerances;
    report["residuals"] = {{"ef1", {{"weakest", r.ef1.weakest}, {"threshold", r.ef1.threshold}, {"passed", r.ef1.passed}}},
                           {"ef2", r.ef2},
                           {"ef3", r.ef3}};
    report["hyperbolic_sup"] = r.hyperbolic_sup;
    json& v = report["verdicts"];
    v["ef1"] = verdict(r.ef1.passed, r.ef1.weakest, r.ef1.threshold, config.grid);
    v["ef2"] = verdict(r.ef2 < tol.ef2, r.ef2, tol.ef2, config.grid);
    v["ef3"] = verdict(r.ef3 < r.ef3_tolerance, r.ef3, r.ef3_tolerance, config.grid);
    v["hyperbolically_bounded"] = verdict(hyperbolically_bounded(r.hyperbolic_sup, tol.hyperbolic_margin),
                                          r.hyperbolic_sup, 1.0 - tol.hyperbolic_margin, config.grid);
}

bool is_iterative(const AnyFamily& family)
{
    return std::visit(overloaded{[](const EvolutionFamily& f) { return f.exactness() == Exactness::iterative; },
                                 [](const hamel::HamelFamily&) { return false; }},
                      family);
}

std::optional<json> hamel_witness(const hamel::HamelFamily& family, const RunConfig& config, std::ostream& log)
{
    try {
        return to_json(hamel::discontinuity_witness(family.spec(), family, DiskRegion(config.witness_radius),
                                                    config.grid.n_angles));
    } catch (const NotDiscontinuous& e) {
        log << "note: " << e.what() << "\n";
    } catch (const DomainError& e) {
        log << "note: no witness: " << e.what() << "\n";
    }
    return std::nullopt;
}

std::optional<std::uint64_t> parse_count(const char* text)
{
    if (!text)
        return std::nullopt;
    std::uint64_t value = 0;
    const char* end = text + std::char_traits<char>::length(text);
    const auto [ptr, ec] = std::from_chars(text, end, value);
    if (ec != std::errc() || ptr != end || value == 0)
        return std::nullopt;
    return value;
}

} // namespace

void RunConfig::validate() const
{
    try {
        grid.validate();
        (void)schedule.deltas(1.0);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (interval && !(interval->a < interval->b && std::isfinite(interval->a) && std::isfinite(interval->b)))
        throw ConfigError("interval needs finite a < b, got " + format_real(interval->a) + "," +
                          format_real(interval->b));
    const Tolerances& t = tolerances;
    for (const double v : {t.ef2, t.ef3, t.ef3_iterative, t.decay_floor, t.hyperbolic_margin})
        if (!(v > 0.0 && std::isfinite(v)))
            throw ConfigError("tolerances must be positive and finite");
    if (!(t.decay_ratio > 0.0 && t.decay_ratio < 1.0))
        throw ConfigError("decay ratio must lie in (0, 1)");
    if (!(witness_radius > 0.0 && witness_radius < 1.0))
        throw ConfigError("witness radius must lie in (0, 1)");
    if (custom_scale && !(*custom_scale > 0.0 && std::isfinite(*custom_scale)))
        throw ConfigError("custom scale must be positive");
}

void apply_config_toml(RunConfig& config, std::string_view toml_text)
{
    toml::table doc;
    try {
        doc = toml::parse(toml_text);
    } catch (const toml::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + std::string(e.description()));
    }

    auto number = [](const toml::node_view<toml::node>& node, const char* key) -> std::optional<double> {
        if (!node)
            return std::nullopt;
        if (const auto v = node.value<double>())
            return *v;
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    };
    auto count = [](const toml::node_view<toml::node>& node, const char* key) -> std::optional<std::int64_t> {
        if (!node)
            return std::nullopt;
        if (const auto v = node.value_exact<std::int64_t>(); v && *v >= 0)
            return *v;
        throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
    };
    auto text = [](const toml::node_view<toml::node>& node, const char* key) -> std::optional<std::string> {
        if (!node)
            return std::nullopt;
        if (const auto v = node.value_exact<std::string>())
            return *v;
        throw ConfigError(std::string("config key '") + key + "' must be a string");
    };
    auto numbers = [&](const toml::node_view<toml::node>& node, const char* key) -> std::optional<std::vector<double>> {
        if (!node)
            return std::nullopt;
        const toml::array* arr = node.as_array();
        if (!arr)
            throw ConfigError(std::string("config key '") + key + "' must be an array of numbers");
        std::vector<double> out;
        for (const auto& item : *arr) {
            const auto v = item.value<double>();
            if (!v)
                throw ConfigError(std::string("config key '") + key + "' must be an array of numbers");
            out.push_back(*v);
        }
        return out;
    };

    if (auto v = text(doc["family"], "family"))
        config.family = *v;
    if (auto v = numbers(doc["interval"], "interval")) {
        if (v->size() != 2)
            throw ConfigError("config key 'interval' needs two numbers");
        config.interval = Interval{(*v)[0], (*v)[1]};
    }
    if (auto v = count(doc["seed"], "seed"))
        config.grid.seed = static_cast<std::uint64_t>(*v);
    if (auto v = count(doc["threads"], "threads"))
        config.threads = static_cast<unsigned>(*v);

    if (auto v = count(doc["grid"]["n_time"], "grid.n_time"))
        config.grid.n_time = static_cast<std::size_t>(*v);
    if (auto v = numbers(doc["grid"]["radii"], "grid.radii"))
        config.grid.radii = *v;
    if (auto v = count(doc["grid"]["n_angles"], "grid.n_angles"))
        config.grid.n_angles = static_cast<int>(*v);
    if (auto v = count(doc["grid"]["n_disk_samples"], "grid.n_disk_samples"))
        config.grid.n_disk_samples = static_cast<std::size_t>(*v);

    if (auto v = number(doc["schedule"]["first_fraction"], "schedule.first_fraction"))
        config.schedule.first_fraction = *v;
    if (auto v = count(doc["schedule"]["halvings"], "schedule.halvings"))
        config.schedule.halvings = static_cast<std::size_t>(*v);

    Tolerances& tol = config.tolerances;
    for (auto [key, slot] : {std::pair{"ef2", &tol.ef2}, std::pair{"ef3", &tol.ef3},
                             std::pair{"ef3_iterative", &tol.ef3_iterative}, std::pair{"decay_ratio", &tol.decay_ratio},
                             std::pair{"decay_floor", &tol.decay_floor},
                             std::pair{"hyperbolic_margin", &tol.hyperbolic_margin}})
        if (auto v = number(doc["tolerances"][key], key))
            *slot = *v;

    if (auto v = text(doc["output"]["json"], "output.json"))
        config.json_out = *v;
    if (auto v = text(doc["output"]["csv"], "output.csv"))
        config.csv_prefix = *v;

    if (auto v = count(doc["bounds"]["trials"], "bounds.trials"))
        config.trials = static_cast<std::size_t>(*v);
    if (auto v = number(doc["bounds"]["custom_scale"], "bounds.custom_scale"))
        config.custom_scale = *v;

    if (auto v = text(doc["counterexample"]["spec"], "counterexample.spec"))
        config.spec_path = *v;
    if (auto v = number(doc["counterexample"]["radius"], "counterexample.radius"))
        config.witness_radius = *v;
}

void apply_config_file(RunConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_toml(config, text.str());
}

unsigned effective_threads(const RunConfig& config)
{
    unsigned threads = config.threads > 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    if (const auto cap = parse_count(std::getenv("EVOFAM_THREADS")))
        threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, *cap));
    return std::max(1u, threads);
}

std::string modulus_csv(const ContinuityModulus& modulus)
{
    std::string out = "delta,radius,modulus\n";
    for (std::size_t k = 0; k < modulus.deltas.size(); ++k)
        for (std::size_t j = 0; j < modulus.radii.size(); ++j)
            out += format_real(modulus.deltas[k]) + "," + format_real(modulus.radii[j]) + "," +
                   format_real(modulus.moduli[k][j]) + "\n";
    return out;
}

CommandResult run_verify(const RunConfig& config, std::ostream& log)
{
    return guarded_setup(log, [&]() -> CommandResult {
        config.validate();
        const AnyFamily family = make_family(config.family, config.interval);
        const Parallelism par{effective_threads(config)};
        json report = report_header("verify", config, family_label(family));
        try {
            const Residuals r = std::visit(
                [&](const auto& f) { return residuals_of(f, config, par, is_iterative(family)); }, family);
            put_residuals(report, r, config);
            if (const auto* h = std::get_if<hamel::HamelFamily>(&family)) {
                const auto audit = hamel::exact_axiom_audit(*h, config.grid.n_time, 100, config.seed());
                report["exact_audit"] = to_json(audit);
            }
            const bool passed = axioms_pass(r, config.tolerances);
            log << report["family"].get<std::string>() << ": EF1 " << (r.ef1.passed ? "ok" : "FAILED")
                << ", EF2 residual " << format_real(r.ef2) << ", EF3 residual " << format_real(r.ef3) << "\n";
            report["passed"] = passed;
            return {passed ? exit_code::pass : exit_code::failure, dump(report)};
        } catch (const Error& e) {
            log << "diagnostics failed: " << e.what() << "\n";
            report["error"] = e.what();
            report["passed"] = false;
            return {exit_code::failure, dump(report)};
        }
    });
}

namespace {

struct ScanTables {
    ContinuityModulus right;
    ContinuityModulus left;
    ContinuityModulus joint;
};

template <class F>
bool scan_family(const F& family, const RunConfig& config, Parallelism par, json& report, ScanTables& tables)
{
    const Tolerances& tol = config.tolerances;
    tables.right = right_parameter_modulus(family, Complex(0.0), config.grid, config.schedule, par);
    tables.left = left_parameter_modulus(family, config.grid, config.schedule, par);
    tables.joint = joint_continuity_modulus(family, config.grid, config.schedule, par);
    const DiagonalProfile diagonal = diagonal_profile(family, config.schedule, 11);

    const DecayCheck right = modulus_decay(tables.right, tol, true);
    const DecayCheck left = modulus_decay(tables.left, tol, true);
    const DecayCheck joint = modulus_decay(tables.joint, tol, false);
    DecayCheck diag;
    diag.add(diagonal.value_deviation, tol);
    diag.add(diagonal.derivative_deviation, tol);

    report["moduli"] = {{"right", to_json(tables.right, right)},
                        {"left", to_json(tables.left, left)},
                        {"joint", to_json(tables.joint, joint)},
                        {"diagonal", to_json(diagonal, diag)}};
    json& v = report["verdicts"];
    v["right_parameter"] = verdict(right.passed, right.worst_ratio, tol.decay_ratio, config.grid);
    v["left_parameter"] = verdict(left.passed, left.worst_ratio, tol.decay_ratio, config.grid);
    v["joint"] = verdict(joint.passed, joint.worst_ratio, tol.decay_ratio, config.grid);
    v["diagonal"] = verdict(diag.passed, diag.worst_ratio, tol.decay_ratio, config.grid);
    return right.passed && left.passed && joint.passed && diag.passed;
}

json certificate_entry(const EvolutionFamily& family)
{
    const double a = family.start();
    const double b = family.end();
    try {
        return to_json(univalence_certificate(family, a, b, DiskRegion(0.5), Complex(0.0)));
    } catch (const Error& e) {
        return {{"status", "failed"}, {"s0", a}, {"t0", b}, {"radius", 0.5}, {"z0", to_json(Complex(0.0))},
                {"reason", e.what()}};
    }
}

} // namespace

CommandResult run_scan(const RunConfig& config, std::ostream& log)
{
    return guarded_setup(log, [&]() -> CommandResult {
        config.validate();
        const AnyFamily family = make_family(config.family, config.interval);
        const Parallelism par{effective_threads(config)};
        json report = report_header("scan", config, family_label(family));
        try {
            const Residuals r = std::visit(
                [&](const auto& f) { return residuals_of(f, config, par, is_iterative(family)); }, family);
            put_residuals(report, r, config);
            ScanTables tables;
            const bool consistent =
                std::visit([&](const auto& f) { return scan_family(f, config, par, report, tables); }, family);
            report["certificates"] = json::array();
            if (const auto* f = std::get_if<EvolutionFamily>(&family))
                report["certificates"].push_back(certificate_entry(*f));
            if (const auto* h = std::get_if<hamel::HamelFamily>(&family))
                if (auto w = hamel_witness(*h, config, log))
                    report["counterexample"] = *w;
            // moduli only speak about continuity of an evolution family
            const bool axioms = axioms_pass(r, config.tolerances);
            const char* text = !axioms      ? "not an evolution family on this grid"
                               : consistent ? "consistent with joint continuity"
                                            : "not consistent with joint continuity";
            report["verdicts"]["joint_continuity"] = {{"passed", axioms && consistent}, {"verdict", text}};
            report["passed"] = axioms && consistent;
            log << report["family"].get<std::string>() << ": " << text << "\n";
            report["tables"] = {{"right", modulus_csv(tables.right)},
                                {"left", modulus_csv(tables.left)},
                                {"joint", modulus_csv(tables.joint)}};
            return {axioms && consistent ? exit_code::pass : exit_code::failure, dump(report)};
        } catch (const Error& e) {
            log << "diagnostics failed: " << e.what() << "\n";
            report["error"] = e.what();
            report["passed"] = false;
            return {exit_code::failure, dump(report)};
        }
    });
}

CommandResult run_bounds(const RunConfig& config, std::ostream& log)
{
    return guarded_setup(log, [&]() -> CommandResult {
        config.validate();
        BoundAuditOptions options;
        options.trials = config.trials;
        options.seed = config.seed();
        options.custom_scale = config.custom_scale;
        if (options.trials == 0)
            log << "warning: 0 trials requested; the bound audit is vacuous\n";
        const BoundAuditReport audit = run_bound_audit(options);

        json report{{"command", "bounds"},
                    {"seed", options.seed},
                    {"trials", audit.trials},
                    {"points", options.points},
                    {"max_depth", options.max_depth},
                    {"slack", options.slack}};
        report["custom_scale"] = options.custom_scale ? json(*options.custom_scale) : json(nullptr);
        report["checks"] = audit.checks;
        report["violation_count"] = audit.violation_count;
        report["origin_fixing_skipped"] = audit.origin_fixing_skipped;
        json violations = json::array();
        for (const BoundViolation& v : audit.violations) {
            json entry{{"bound", v.bound}, {"map", v.map}, {"z", to_json(v.z)}};
            entry["z1"] = v.z1 ? to_json(*v.z1) : json(nullptr);
            entry["lhs"] = v.lhs;
            entry["rhs"] = v.rhs;
            if (!v.note.empty())
                entry["note"] = v.note;
            violations.push_back(entry);
            log << "violation: " << v.bound << " at z = " << format_complex(v.z)
                << (v.z1 ? ", z1 = " + format_complex(*v.z1) : std::string()) << ": " << format_real(v.lhs)
                << " > " << format_real(v.rhs) << (v.note.empty() ? "" : " (" + v.note + ")") << "\n"
                << "  map: " << v.map << "\n";
        }
        if (audit.violation_count > audit.violations.size())
            log << "... " << audit.violation_count - audit.violations.size() << " more violations\n";
        report["violations"] = violations;
        report["verdicts"] = {{"bounds", {{"passed", audit.passed()}, {"value", audit.violation_count}, {"threshold", 0}}}};
        report["passed"] = audit.passed();
        log << "bound audit: " << audit.trials << " maps, " << audit.violation_count << " violations\n";
        return {audit.passed() ? exit_code::pass : exit_code::failure, dump(report)};
    });
}

CommandResult run_counterexample(const RunConfig& config, std::ostream& log)
{
    return guarded_setup(log, [&]() -> CommandResult {
        config.validate();
        hamel::HamelSpecFile spec = config.spec_path ? hamel::load_hamel_spec(*config.spec_path)
                                   : is_hamel_name(config.family) ? hamel_spec_for(config.family)
                                                                  : hamel::default_hamel_spec();
        const hamel::HamelFamily family(spec.spec, spec.start, spec.end, spec.name);
        json report{{"command", "counterexample"}, {"family", family.label()}, {"seed", config.seed()}};
        report["spec"] = to_json(spec.spec, &spec);

        const auto audit = hamel::exact_axiom_audit(family, config.grid.n_time, 100, config.seed());
        report["exact_audit"] = to_json(audit);
        const bool exact = audit.ef1 && audit.ef2 && audit.ef3;
        const bool rounding = audit.float_mismatch < 1e-15;
        report["verdicts"] = {{"exact_axioms", {{"passed", exact}, {"triples", audit.triples}}},
                              {"float_mismatch", {{"passed", rounding},
                                                  {"value", audit.float_mismatch},
                                                  {"threshold", 1e-15}}}};
        try {
            const auto witness = hamel::discontinuity_witness(spec.spec, family, DiskRegion(config.witness_radius),
                                                              config.grid.n_angles);
            report["counterexample"] = to_json(witness);
            const bool discontinuous = witness.gap > 0.0 && witness.left_gap > 0.0;
            report["verdicts"]["discontinuous"] = {{"passed", discontinuous}, {"value", witness.gap}, {"threshold", 0.0}};
            const bool passed = exact && rounding && discontinuous;
            report["passed"] = passed;
            log << family.label() << ": axioms exact over " << audit.triples << " triples, witness gap "
                << format_real(witness.gap) << " at r = " << format_real(config.witness_radius) << "\n";
            return {passed ? exit_code::pass : exit_code::failure, dump(report)};
        } catch (const NotDiscontinuous& e) {
            log << "not discontinuous: " << e.what() << "\n";
            report["counterexample"] = nullptr;
            report["error"] = e.what();
            report["passed"] = false;
            return {exit_code::failure, dump(report)};
        }
    });
}

namespace {

int emit(const CommandResult& result, const RunConfig& config, std::ostream& out, std::ostream& log)
{
    if (result.report.empty())
        return result.exit_code;
    std::string report = result.report;
    const json parsed = json::parse(report);
    if (parsed.contains("tables")) {
        if (config.csv_prefix) {
            for (const char* side : {"right", "left", "joint"}) {
                const std::string path = *config.csv_prefix + "_" + side + ".csv";
                std::ofstream csv(path, std::ios::binary);
                if (!csv) {
                    log << "error: cannot write '" << path << "'\n";
                    return exit_code::usage;
                }
                csv << parsed["tables"][side].get<std::string>();
            }
        }
        json trimmed = parsed;
        trimmed.erase("tables");
        report = dump(trimmed);
    }
    if (config.json_out) {
        std::ofstream file(*config.json_out, std::ios::binary);
        if (!file) {
            log << "error: cannot write '" << *config.json_out << "'\n";
            return exit_code::usage;
        }
        file << report;
    } else {
        out << report;
    }
    return result.exit_code;
}

} // namespace

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& log)
{
    return emit(run_verify(config, log), config, out, log);
}

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& log)
{
    return emit(run_scan(config, log), config, out, log);
}

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& log)
{
    return emit(run_bounds(config, log), config, out, log);
}

int cmd_counterexample(const RunConfig& config, std::ostream& out, std::ostream& log)
{
    return emit(run_counterexample(config, log), config, out, log);
}

} // namespace evofam
