#pragma once

#include "evofam/evolution.hpp"

#include <functional>
#include <string>

namespace evofam {

/// Increasing family of univalent maps f_t on [a, b] (f_s(D) inside f_t(D) for s <= t).
/// Univalence and nesting are the caller's responsibility; only solved points are range-checked.
struct LoewnerChain {
    Interval interval;
    std::function<DiskMap(double t)> member;
    std::string label;
};

struct NewtonOptions {
    double tolerance = 1e-12;
    int max_iterations = 100;
    /// Side of the polar grid used to reseed Newton after a failed first attempt.
    int fallback_grid = 32;
};

struct InversionResult {
    Complex w;
    double residual;
    int iterations;
    bool used_fallback;
};

/// Solves f(w) = target for w in the disk by damped Newton iteration started at
/// `initial`. The damping factor halves whenever a step would increase the
/// residual or leave the disk. If the first attempt stalls, Newton restarts from
/// the best point of a fallback_grid x fallback_grid polar grid.
///
/// Throws InversionFailure when neither attempt reaches the tolerance, or
/// RangeError when the iterates are pressed against the unit circle (the
/// target is not in f(D)).
InversionResult invert_univalent(const DiskMap& f, Complex target, Complex initial,
                                 const NewtonOptions& options = {});

/// w_{s,t} = f_t^{-1} o f_s, evaluated pointwise by invert_univalent with the
/// initial guess w0 = z. w_{t,t} short-circuits to the identity.
EvolutionFamily from_loewner_chain(LoewnerChain chain, double inversion_tol = 1e-12);

/// f_t = w_{t,T}: the chain an evolution family induces at horizon T.
LoewnerChain loewner_chain_of(const EvolutionFamily& family, double horizon);

} // namespace evofam
