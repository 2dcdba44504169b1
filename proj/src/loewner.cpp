#include "evofam/loewner.hpp"

#include "evofam/errors.hpp"
#include "evofam/format.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace evofam {

namespace {

constexpr double kMinDamping = 0x1.0p-40;

struct Attempt {
    Complex w;
    double residual;
    int iterations;
    bool converged;
};

Attempt newton(const DiskMap& f, Complex target, Complex w, const NewtonOptions& opt)
{
    Jet jet = f.jet(w);
    Complex F = jet.value - target;
    double residual = std::abs(F);
    double damping = 1.0;
    int it = 0;
    while (residual >= opt.tolerance && it < opt.max_iterations) {
        ++it;
        if (jet.derivative == Complex(0.0))
            break;
        const Complex step = F / jet.derivative;
        bool accepted = false;
        while (damping >= kMinDamping) {
            const Complex candidate = w - damping * step;
            if (std::norm(candidate) < 1.0) {
                const Jet next = f.jet(candidate);
                const double next_residual = std::abs(next.value - target);
                if (next_residual < residual) {
                    w = candidate;
                    jet = next;
                    F = next.value - target;
                    residual = next_residual;
                    accepted = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if (!accepted)
            break;
        damping = std::min(1.0, 2.0 * damping);
    }
    return {w, residual, it, residual < opt.tolerance};
}

Complex best_grid_seed(const DiskMap& f, Complex target, int side)
{
    Complex best = 0.0;
    double best_residual = std::abs(f.eval(0.0) - target);
    for (int i = 0; i < side; ++i) {
        const double radius = (i + 1.0) / (side + 1.0);
        for (int j = 0; j < side; ++j) {
            const Complex w = std::polar(radius, 2.0 * std::numbers::pi * j / side);
            const double residual = std::abs(f.eval(w) - target);
            if (residual < best_residual) {
                best_residual = residual;
                best = w;
            }
        }
    }
    return best;
}

} // namespace

InversionResult invert_univalent(const DiskMap& f, Complex target, Complex initial, const NewtonOptions& options)
{
    if (!(std::norm(initial) < 1.0))
        initial = 0.0;
    const Attempt first = newton(f, target, initial, options);
    if (first.converged)
        return {first.w, first.residual, first.iterations, false};

    const Attempt second = newton(f, target, best_grid_seed(f, target, options.fallback_grid), options);
    if (second.converged)
        return {second.w, second.residual, first.iterations + second.iterations, true};

    const Attempt& best = second.residual < first.residual ? second : first;
    // Iterates are confined to the open disk; a stall against the circle means
    // the preimage lies outside the closed disk (beyond the tolerance).
    if (std::abs(best.w) > 1.0 - std::sqrt(options.tolerance))
        throw RangeError("preimage of " + format_complex(target) + " leaves the unit disk (|w| -> " +
                         format_real(std::abs(best.w)) + ")");
    throw InversionFailure("Newton inversion of " + format_complex(target) + " stalled at residual " +
                           format_real(best.residual) + " after " +
                           std::to_string(first.iterations + second.iterations) + " iterations");
}

EvolutionFamily from_loewner_chain(LoewnerChain chain, double inversion_tol)
{
    if (!chain.member)
        throw DomainError("Loewner chain needs a member rule");
    if (!(inversion_tol > 0.0))
        throw DomainError("inversion tolerance must be positive");
    const Interval interval = make_interval(chain.interval.a, chain.interval.b);
    const std::string label = "loewner:" + chain.label;
    NewtonOptions options;
    options.tolerance = inversion_tol;

    auto transition = [member = chain.member, label, options](double s, double t) -> DiskMap {
        if (s == t)
            return DiskMap::identity();
        const DiskMap fs = member(s);
        const DiskMap ft = member(t);
        return DiskMap::custom(
            label + "(" + format_real(s) + "," + format_real(t) + ")",
            [fs, ft, options](Complex z) {
                const Jet source = fs.jet(z);
                const InversionResult inv = invert_univalent(ft, source.value, z, options);
                return Jet{inv.w, source.derivative / ft.deriv(inv.w)};
            });
    };
    return EvolutionFamily(interval, std::move(transition), label, Exactness::iterative);
}

LoewnerChain loewner_chain_of(const EvolutionFamily& family, double horizon)
{
    if (!family.interval().contains(horizon))
        throw DomainError("horizon " + format_real(horizon) + " lies outside the family interval");
    return LoewnerChain{Interval{family.interval().a, horizon},
                        [family, horizon](double t) { return family.at(t, horizon); },
                        family.label() + "@T=" + format_real(horizon)};
}

} // namespace evofam
