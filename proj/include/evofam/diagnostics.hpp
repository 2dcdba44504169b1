#pragma once

// Numerical probes of the continuity conditions for evolution families.
//
// Nothing here decides continuity. Scans report modulus sequences over a
// halving schedule of gap widths, and verdicts are heuristics over those
// sequences. "Locally uniform" distance is the max of |f - g| over circles of
// a fixed radius ladder; by the maximum principle the circle bounds the disk.
//
// The scans are templates over TimeFamily so that both real-time families and
// families indexed by exact lattice times (see hamel.hpp) go through the same
// code. A TimeFamily supplies its own grids and neighbourhoods.

#include "evofam/bounds.hpp"
#include "evofam/diskmap.hpp"
#include "evofam/errors.hpp"
#include "evofam/evolution.hpp"
#include "evofam/parallel.hpp"
#include "evofam/sampling.hpp"

#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace evofam {

template <class F>
concept TimeFamily = requires(const F& f, const typename F::time_type& s, double d, std::size_t n) {
    typename F::time_type;
    { f.start() } -> std::convertible_to<typename F::time_type>;
    { f.end() } -> std::convertible_to<typename F::time_type>;
    { f.at(s, s) } -> std::convertible_to<DiskMap>;
    { f.real(s) } -> std::convertible_to<double>;
    { f.precedes(s, s) } -> std::convertible_to<bool>;
    { f.grid(n) } -> std::convertible_to<std::vector<typename F::time_type>>;
    { f.near(s, d) } -> std::convertible_to<std::vector<typename F::time_type>>;
    { f.label() } -> std::convertible_to<std::string>;
};

struct GridSpec {
    std::size_t n_time = 9;
    std::vector<double> radii{0.25, 0.5, 0.75, 0.9};
    int n_angles = 64;
    /// Quasi-random points in the disk of the outermost radius, for pointwise residuals.
    std::size_t n_disk_samples = 64;
    std::uint64_t seed = 0;

    /// Throws DomainError unless n_time >= 2, radii strictly increase inside
    /// (0, 1), n_angles >= 8 and n_disk_samples >= 1.
    void validate() const;
    double outer_radius() const { return radii.back(); }
};

/// Gap widths delta_k = first_fraction * length * 2^-k for k = 0..halvings.
struct ModulusSchedule {
    double first_fraction = 0.25;
    std::size_t halvings = 8;

    std::vector<double> deltas(double length) const;
};

/// max over n_angles equispaced points of |z| = r of |f(z) - g(z)|.
/// Throws DomainError if r >= 1.
double lu_distance(const DiskMap& f, const DiskMap& g, DiskRegion r, int n_angles);

struct ContinuityModulus {
    std::vector<double> deltas;
    std::vector<double> radii;
    /// moduli[k][j]: sup over sampled pairs within deltas[k] of the distance on |z| = radii[j].
    std::vector<std::vector<double>> moduli;
    /// Scalar moduli of the tracked point value and derivative (empty when not computed).
    std::vector<double> value_moduli;
    std::vector<double> derivative_moduli;

    std::vector<double> at_radius(std::size_t j) const;
    /// Column for the given radius; throws DomainError if the radius was not scanned.
    std::vector<double> at_radius_value(double r) const;
};

struct DiagonalLimits {
    /// max |w_{s,t}(0)| over sampled s <= c <= t with t - s <= gap
    double value_deviation;
    /// max |w'_{s,t}(0) - 1| over the same pairs
    double derivative_deviation;
};

struct DiagonalProfile {
    std::vector<double> deltas;
    std::vector<double> centers;  // real values of the c-grid
    std::vector<double> value_deviation;       // max over c, per delta
    std::vector<double> derivative_deviation;  // max over c, per delta
};

struct NonConstancyAudit {
    double weakest;  // min over sampled (s,t) of max(|w'(0)|, value spread)
    double threshold;
    bool passed;
};

/// Heuristic decay test: each step k -> k+1 satisfies m[k+1] <= ratio * m[k],
/// unless m[k] is already at or below `floor` (a vanished modulus carries no signal).
bool decays(const std::vector<double>& sequence, double ratio = 0.75, double floor = 1e-9);

/// Largest m[k+1] / m[k] over steps where m[k] > floor; 0 if there is none.
double worst_decay_ratio(const std::vector<double>& sequence, double floor = 1e-9);

struct UnivalenceCertificate {
    double s0;
    double t0;
    double radius;
    Complex z0;
    double sigma;
    double landau_radius;
    std::vector<double> subdivision;  // s0 = tau_0 < ... < tau_n = t0
    std::vector<double> ratios;       // |alpha(tau_k)| / |alpha(tau_{k-1})|, k = 1..n

    std::size_t steps() const { return ratios.size(); }
};

struct CertificateOptions {
    std::size_t step_cap = 10000;
    double alpha_floor = 1e-12;
    int bisection_iterations = 60;
};

/// Certifies univalence of w_{s0,t0} on the subdisk of radius r after
/// conjugating the family at z0 so every transition fixes the origin. Picks
/// sigma = (sigma_min + 1) / 2 with landau_radius(sigma_min) = r, then extends
/// tau_{k+1} greedily (bisection) as far as |alpha(tau_{k+1}) / alpha(tau_k)| > sigma
/// allows, alpha(t) being the conjugated w'_{a,t}(0). Each step map is then
/// univalent on the subdisk and maps it into itself, so their composition is too.
///
/// Throws DomainError if s0 >= t0, if either lies outside the interval, if
/// |z0| >= 1 or r >= 1. Throws CertificationFailure if |alpha| falls below the
/// floor, if a step cannot advance, or if the step cap is exceeded.
UnivalenceCertificate univalence_certificate(const EvolutionFamily& family, double s0, double t0, DiskRegion r,
                                             Complex z0, const CertificateOptions& options = {});

/// The conjugated transition a certificate speaks about.
DiskMap certified_map(const EvolutionFamily& family, const UnivalenceCertificate& certificate);

struct UnivalenceSample {
    bool passed;
    std::optional<std::pair<Complex, Complex>> witness;
    double witness_gap = 0.0;  // |f(z1) - f(z2)| for the witness
};

/// Falsification counterpart of the certificate. For n quasi-random points z1
/// in the subdisk, looks for a second preimage of f(z1): first directly at a
/// partner point (the next quasi-random point, -z1, conj(z1)), then by Newton
/// iteration from each partner. Fails with the pair as witness when
/// |f(z1) - f(z2)| < 1e-10 while |z1 - z2| > 1e-6 and both lie in the subdisk.
UnivalenceSample univalence_sample_test(const DiskMap& map, DiskRegion r, std::size_t n,
                                        std::uint64_t seed = 0);

/// TM1 residual: max over the grid of the distance between f_{t,t} and the identity.
double reverse_identity_residual(const ReverseFamily& family, const GridSpec& grid);
/// TM2 residual: max over grid triples s <= u <= t of |f_{s,u}(f_{u,t}(z)) - f_{s,t}(z)|.
double reverse_composition_residual(const ReverseFamily& family, const GridSpec& grid);

namespace detail {

std::vector<std::vector<Complex>> circles(const GridSpec& grid);

/// Per-radius max of |f - g| on the sampled circles.
void raise_circle_distance(const DiskMap& f, const DiskMap& g, const std::vector<std::vector<Complex>>& circles,
                           std::vector<double>& acc, std::size_t offset = 0);

template <class F>
std::vector<std::pair<typename F::time_type, typename F::time_type>> admissible_pairs(
    const F& family, const std::vector<typename F::time_type>& times)
{
    std::vector<std::pair<typename F::time_type, typename F::time_type>> out;
    for (std::size_t i = 0; i < times.size(); ++i)
        for (std::size_t j = i; j < times.size(); ++j)
            if (family.precedes(times[i], times[j]))
                out.emplace_back(times[i], times[j]);
    return out;
}

template <class F>
void require_within(const F& family, const typename F::time_type& c)
{
    if (!(family.precedes(family.start(), c) && family.precedes(c, family.end())))
        throw DomainError(std::string(family.label()) + ": time outside the family interval");
}

} // namespace detail

/// EF2 residual: max over the time grid of the distance between w_{t,t} and the
/// identity on the outermost circle.
template <TimeFamily F>
double identity_residual(const F& family, const GridSpec& grid)
{
    grid.validate();
    const DiskMap id = DiskMap::identity();
    const DiskRegion r(grid.outer_radius());
    double worst = 0.0;
    for (const auto& t : family.grid(grid.n_time))
        detail::raise_max(worst, lu_distance(family.at(t, t), id, r, grid.n_angles));
    return worst;
}

/// EF3 residual: max over admissible grid triples and quasi-random disk points
/// of |w_{u,t}(w_{s,u}(z)) - w_{s,t}(z)|.
template <TimeFamily F>
double semigroup_residual(const F& family, const GridSpec& grid, Parallelism par = {})
{
    grid.validate();
    const auto times = family.grid(grid.n_time);
    const auto points = disk_samples(grid.n_disk_samples, grid.outer_radius(), grid.seed);
    const auto acc = detail::parallel_max(times.size(), 1, par, [&](std::size_t i, std::vector<double>& out) {
        const auto& s = times[i];
        for (std::size_t j = i; j < times.size(); ++j) {
            const auto& u = times[j];
            if (!family.precedes(s, u))
                continue;
            const DiskMap first = family.at(s, u);
            for (std::size_t k = j; k < times.size(); ++k) {
                const auto& t = times[k];
                if (!family.precedes(u, t))
                    continue;
                const DiskMap second = family.at(u, t);
                const DiskMap direct = family.at(s, t);
                for (const Complex z : points)
                    detail::raise_max(out[0], std::abs(second.eval(first.eval(z)) - direct.eval(z)));
            }
        }
    });
    return acc[0];
}

/// EF1 audit: w_{s,t} counts as non-constant when |w'(0)| or the spread of
/// values over 8 points of |z| = 1/2 exceeds 1e-14.
template <TimeFamily F>
NonConstancyAudit nonconstancy_audit(const F& family, const GridSpec& grid)
{
    grid.validate();
    constexpr double threshold = 1e-14;
    const auto probes = circle_samples(0.5, 8);
    double weakest = std::numeric_limits<double>::infinity();
    for (const auto& [s, t] : detail::admissible_pairs(family, family.grid(grid.n_time))) {
        const DiskMap w = family.at(s, t);
        double strength = std::abs(w.deriv(0.0));
        const Complex anchor = w.eval(probes.front());
        for (const Complex z : probes)
            strength = std::max(strength, std::abs(w.eval(z) - anchor));
        weakest = std::min(weakest, strength);
    }
    return {weakest, threshold, weakest > threshold};
}

/// max |w_{s,t}(0)| over admissible grid pairs.
template <TimeFamily F>
double hyperbolic_bound_sup(const F& family, const GridSpec& grid, Parallelism par = {})
{
    grid.validate();
    const auto pairs = detail::admissible_pairs(family, family.grid(grid.n_time));
    return detail::parallel_max(pairs.size(), 1, par, [&](std::size_t i, std::vector<double>& out) {
        detail::raise_max(out[0], std::abs(family.at(pairs[i].first, pairs[i].second).eval(0.0)));
    })[0];
}

inline bool hyperbolically_bounded(double sup, double margin = 1e-6) { return sup <= 1.0 - margin; }

/// Moduli of t -> w_{a,t} in the locally uniform distance, plus scalar moduli
/// of t -> w_{a,t}(z0) and t -> w'_{a,t}(z0). Pairs are (t, t') with t on the
/// time grid and t' in family.near(t, delta).
template <TimeFamily F>
ContinuityModulus right_parameter_modulus(const F& family, Complex z0, const GridSpec& grid,
                                          const ModulusSchedule& schedule = {}, Parallelism par = {})
{
    grid.validate();
    if (!(std::norm(z0) < 1.0))
        throw DomainError("base point is not inside the unit disk");
    const auto a = family.start();
    const auto times = family.grid(grid.n_time);
    const auto rings = detail::circles(grid);
    const std::size_t nr = grid.radii.size();

    ContinuityModulus out;
    out.deltas = schedule.deltas(family.real(family.end()) - family.real(a));
    out.radii = grid.radii;
    for (const double delta : out.deltas) {
        const auto acc = detail::parallel_max(times.size(), nr + 2, par, [&](std::size_t i, std::vector<double>& m) {
            const DiskMap base = family.at(a, times[i]);
            const Jet base_jet = base.jet(z0);
            for (const auto& tp : family.near(times[i], delta)) {
                const DiskMap other = family.at(a, tp);
                detail::raise_circle_distance(base, other, rings, m);
                const Jet other_jet = other.jet(z0);
                detail::raise_max(m[nr], std::abs(base_jet.value - other_jet.value));
                detail::raise_max(m[nr + 1], std::abs(base_jet.derivative - other_jet.derivative));
            }
        });
        out.moduli.emplace_back(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(nr));
        out.value_moduli.push_back(acc[nr]);
        out.derivative_moduli.push_back(acc[nr + 1]);
    }
    return out;
}

/// Mirror of right_parameter_modulus for s -> w_{s,b}; the scalar moduli track
/// w_{s,b}(0) and w'_{s,b}(0).
template <TimeFamily F>
ContinuityModulus left_parameter_modulus(const F& family, const GridSpec& grid, const ModulusSchedule& schedule = {},
                                         Parallelism par = {})
{
    grid.validate();
    const auto b = family.end();
    const auto times = family.grid(grid.n_time);
    const auto rings = detail::circles(grid);
    const std::size_t nr = grid.radii.size();

    ContinuityModulus out;
    out.deltas = schedule.deltas(family.real(b) - family.real(family.start()));
    out.radii = grid.radii;
    for (const double delta : out.deltas) {
        const auto acc = detail::parallel_max(times.size(), nr + 2, par, [&](std::size_t i, std::vector<double>& m) {
            const DiskMap base = family.at(times[i], b);
            const Jet base_jet = base.jet(0.0);
            for (const auto& sp : family.near(times[i], delta)) {
                const DiskMap other = family.at(sp, b);
                detail::raise_circle_distance(base, other, rings, m);
                const Jet other_jet = other.jet(0.0);
                detail::raise_max(m[nr], std::abs(base_jet.value - other_jet.value));
                detail::raise_max(m[nr + 1], std::abs(base_jet.derivative - other_jet.derivative));
            }
        });
        out.moduli.emplace_back(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(nr));
        out.value_moduli.push_back(acc[nr]);
        out.derivative_moduli.push_back(acc[nr + 1]);
    }
    return out;
}

/// Moduli over pairs (s,t), (s',t') with s' in {s} + near(s), t' in {t} + near(t),
/// both admissible, so max(|s - s'|, |t - t'|) <= delta.
template <TimeFamily F>
ContinuityModulus joint_continuity_modulus(const F& family, const GridSpec& grid,
                                           const ModulusSchedule& schedule = {}, Parallelism par = {})
{
    grid.validate();
    const auto pairs = detail::admissible_pairs(family, family.grid(grid.n_time));
    const auto rings = detail::circles(grid);
    const std::size_t nr = grid.radii.size();

    ContinuityModulus out;
    out.deltas = schedule.deltas(family.real(family.end()) - family.real(family.start()));
    out.radii = grid.radii;
    for (const double delta : out.deltas) {
        const auto acc = detail::parallel_max(pairs.size(), nr, par, [&](std::size_t i, std::vector<double>& m) {
            const auto& [s, t] = pairs[i];
            const DiskMap base = family.at(s, t);
            auto ss = family.near(s, delta);
            ss.push_back(s);
            auto ts = family.near(t, delta);
            ts.push_back(t);
            for (const auto& sp : ss)
                for (const auto& tp : ts)
                    if (family.precedes(sp, tp))
                        detail::raise_circle_distance(base, family.at(sp, tp), rings, m);
        });
        out.moduli.push_back(acc);
    }
    return out;
}

/// Two-sided diagonal limits at c: pairs s <= c <= t drawn from {c} + near(c, gap)
/// with t - s <= gap. Throws DomainError if c lies outside the interval.
template <TimeFamily F>
DiagonalLimits diagonal_limits(const F& family, const typename F::time_type& c, double gap)
{
    detail::require_within(family, c);
    if (!(gap > 0.0))
        throw DomainError("diagonal gap must be positive");
    std::vector<typename F::time_type> left{c};
    std::vector<typename F::time_type> right{c};
    for (const auto& p : family.near(c, gap)) {
        if (family.precedes(p, c))
            left.push_back(p);
        if (family.precedes(c, p))
            right.push_back(p);
    }
    const double slack = 1e-12 * gap;
    DiagonalLimits out{0.0, 0.0};
    for (const auto& s : left)
        for (const auto& t : right) {
            if (family.real(t) - family.real(s) > gap + slack)
                continue;
            const Jet j = family.at(s, t).jet(0.0);
            detail::raise_max(out.value_deviation, std::abs(j.value));
            detail::raise_max(out.derivative_deviation, std::abs(j.derivative - 1.0));
        }
    return out;
}

/// diagonal_limits with the gap of the time grid, (b - a) / (n_time - 1).
template <TimeFamily F>
DiagonalLimits diagonal_limits(const F& family, const typename F::time_type& c, const GridSpec& grid)
{
    grid.validate();
    const double length = family.real(family.end()) - family.real(family.start());
    return diagonal_limits(family, c, length / static_cast<double>(grid.n_time - 1));
}

/// diagonal_limits maximized over an n_centers-point c-grid, for every gap in the schedule.
template <TimeFamily F>
DiagonalProfile diagonal_profile(const F& family, const ModulusSchedule& schedule = {}, std::size_t n_centers = 11)
{
    DiagonalProfile out;
    const auto centers = family.grid(n_centers);
    for (const auto& c : centers)
        out.centers.push_back(family.real(c));
    out.deltas = schedule.deltas(family.real(family.end()) - family.real(family.start()));
    for (const double delta : out.deltas) {
        double value = 0.0;
        double derivative = 0.0;
        for (const auto& c : centers) {
            const DiagonalLimits lim = diagonal_limits(family, c, delta);
            detail::raise_max(value, lim.value_deviation);
            detail::raise_max(derivative, lim.derivative_deviation);
        }
        out.value_deviation.push_back(value);
        out.derivative_deviation.push_back(derivative);
    }
    return out;
}

} // namespace evofam
