#pragma once

// Named families for the command line and the Python bindings.
//
//   radial                      e^{-(t-s)} z
//   rotation:<phase>            e^{i(phase(t) - phase(s))} z; phase is const, t,
//                               t2 (or t^2), sin, or poly:c0,c1,...
//   glued:<A>+<B>               A on the first half of the interval, B on the second
//   mobius-conjugated:<A>       A conjugated along c(t) = 0.5 e^{it}
//   loewner:<A>                 A rebuilt from its Loewner chain f_t = w_{t,b}
//                               by Newton inversion
//   corrupted-demo              e^{-(t-s)^2} z (breaks the semigroup law)
//   hamel, hamel:default        additive-function rotations on the (1, sqrt2) lattice
//   hamel:<path.toml>           same, from a spec file

#include "evofam/evolution.hpp"
#include "evofam/hamel.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evofam {

using AnyFamily = std::variant<EvolutionFamily, hamel::HamelFamily>;

struct CatalogEntry {
    std::string pattern;
    std::string description;
};

std::vector<CatalogEntry> family_catalog();

/// Interval used when none is given: [0, 2] for corrupted-demo and the Hamel
/// families (so the sqrt2 witness fits), [0, 1] otherwise.
Interval default_interval(std::string_view name);

/// Throws ConfigError for unknown names or malformed parameters, DomainError
/// for an invalid interval. Hamel endpoints must be lattice points (LatticeError).
AnyFamily make_family(std::string_view name, std::optional<Interval> interval = std::nullopt);

/// make_family restricted to real-time families; throws ConfigError for Hamel names.
EvolutionFamily make_evolution_family(std::string_view name, std::optional<Interval> interval = std::nullopt);

bool is_hamel_name(std::string_view name);

/// Phase function for rotation:<phase>. Throws ConfigError on unknown phases.
std::function<double(double)> parse_phase(std::string_view phase);

/// The spec behind hamel / hamel:default / hamel:<path>.
hamel::HamelSpecFile hamel_spec_for(std::string_view name);

/// Label of a family in either alternative.
std::string family_label(const AnyFamily& family);

} // namespace evofam
