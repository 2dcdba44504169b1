#pragma once

#include "evofam/diskmap.hpp"
#include "evofam/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace evofam::testing {

inline Complex random_in_disk(std::mt19937_64& rng, double radius)
{
    return std::polar(radius * std::sqrt(uniform01(rng)), 2.0 * std::numbers::pi * uniform01(rng));
}

// Independent closed forms used as oracles.
inline Complex mobius_oracle(Complex lambda, Complex z) { return (z + lambda) / (1.0 + std::conj(lambda) * z); }

inline Complex mobius_deriv_oracle(Complex lambda, Complex z)
{
    const Complex d = 1.0 + std::conj(lambda) * z;
    return (1.0 - std::norm(lambda)) / (d * d);
}

} // namespace evofam::testing
