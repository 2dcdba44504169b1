#include "evofam/registry.hpp"

#include "evofam/errors.hpp"
#include "evofam/loewner.hpp"

#include <cmath>
#include <sstream>

namespace evofam {

namespace {

constexpr std::string_view kRotation = "rotation:";
constexpr std::string_view kGlued = "glued:";
constexpr std::string_view kConjugated = "mobius-conjugated:";
constexpr std::string_view kLoewner = "loewner:";
constexpr std::string_view kHamel = "hamel";

std::vector<double> parse_coefficients(std::string_view text)
{
    std::vector<double> out;
    std::stringstream in{std::string(text)};
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad polynomial coefficient '" + item + "'");
        }
    }
    if (out.empty())
        throw ConfigError("polynomial phase needs coefficients");
    return out;
}

} // namespace

std::vector<CatalogEntry> family_catalog()
{
    return {
        {"radial", "w_{s,t}(z) = e^{-(t-s)} z"},
        {"rotation:<phase>", "w_{s,t}(z) = e^{i(p(t)-p(s))} z, phase const | t | t2 | sin | poly:c0,c1,..."},
        {"glued:<A>+<B>", "A on the first half of the interval, B on the second"},
        {"mobius-conjugated:<A>", "A conjugated by Mobius maps along c(t) = 0.5 e^{it}"},
        {"loewner:<A>", "A rebuilt from its Loewner chain by Newton inversion"},
        {"corrupted-demo", "e^{-(t-s)^2} z, violates the semigroup law (default interval [0,2])"},
        {"hamel | hamel:default | hamel:<spec.toml>", "rotations by an additive, non-linear f on a lattice"},
    };
}

bool is_hamel_name(std::string_view name)
{
    return name == kHamel || name.starts_with("hamel:");
}

Interval default_interval(std::string_view name)
{
    if (name == "corrupted-demo" || is_hamel_name(name))
        return {0.0, 2.0};
    return {0.0, 1.0};
}

std::function<double(double)> parse_phase(std::string_view phase)
{
    if (phase == "const" || phase == "zero")
        return [](double) { return 0.0; };
    if (phase == "t")
        return [](double t) { return t; };
    if (phase == "t2" || phase == "t^2")
        return [](double t) { return t * t; };
    if (phase == "sin")
        return [](double t) { return std::sin(t); };
    if (phase.starts_with("poly:")) {
        auto c = parse_coefficients(phase.substr(5));
        return [c = std::move(c)](double t) {
            double acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it)
                acc = acc * t + *it;
            return acc;
        };
    }
    throw ConfigError("unknown rotation phase '" + std::string(phase) + "'");
}

hamel::HamelSpecFile hamel_spec_for(std::string_view name)
{
    if (name == kHamel || name == "hamel:default")
        return hamel::default_hamel_spec();
    if (!name.starts_with("hamel:"))
        throw ConfigError("'" + std::string(name) + "' is not a Hamel family");
    return hamel::load_hamel_spec(std::string(name.substr(6)));
}

EvolutionFamily make_evolution_family(std::string_view name, std::optional<Interval> interval)
{
    const Interval iv = interval ? make_interval(interval->a, interval->b) : default_interval(name);
    if (name == "radial")
        return make_radial(iv.a, iv.b);
    if (name == "corrupted-demo")
        return make_corrupted_demo(iv.a, iv.b);
    if (name.starts_with(kRotation)) {
        const std::string_view phase = name.substr(kRotation.size());
        return make_rotation(iv.a, iv.b, parse_phase(phase), std::string(phase));
    }
    if (name.starts_with(kGlued)) {
        const std::string_view rest = name.substr(kGlued.size());
        const auto plus = rest.find('+');
        if (plus == std::string_view::npos)
            throw ConfigError("glued family needs the form glued:<A>+<B>");
        const double mid = 0.5 * (iv.a + iv.b);
        return glue(make_evolution_family(rest.substr(0, plus), Interval{iv.a, mid}),
                    make_evolution_family(rest.substr(plus + 1), Interval{mid, iv.b}));
    }
    if (name.starts_with(kConjugated)) {
        const EvolutionFamily inner = make_evolution_family(name.substr(kConjugated.size()), iv);
        const Trajectory c(iv, [](double t) { return std::polar(0.5, t); }, "0.5e^{it}");
        return conjugate(inner, c);
    }
    if (name.starts_with(kLoewner)) {
        const EvolutionFamily inner = make_evolution_family(name.substr(kLoewner.size()), iv);
        LoewnerChain chain = loewner_chain_of(inner, iv.b);
        chain.label = std::string(name.substr(kLoewner.size()));
        return from_loewner_chain(std::move(chain));
    }
    if (is_hamel_name(name))
        throw ConfigError("'" + std::string(name) + "' is a lattice-time family, not a real-time one");
    throw ConfigError("unknown family '" + std::string(name) + "'");
}

AnyFamily make_family(std::string_view name, std::optional<Interval> interval)
{
    if (!is_hamel_name(name))
        return make_evolution_family(name, interval);
    hamel::HamelSpecFile spec = hamel_spec_for(name);
    if (interval) {
        const Interval iv = make_interval(interval->a, interval->b);
        spec.start = hamel::TimeVector::from_double(spec.spec.basis, iv.a);
        spec.end = hamel::TimeVector::from_double(spec.spec.basis, iv.b);
    }
    return hamel::HamelFamily(spec.spec, spec.start, spec.end, spec.name);
}

std::string family_label(const AnyFamily& family)
{
    return std::visit([](const auto& f) { return std::string(f.label()); }, family);
}

} // namespace evofam
