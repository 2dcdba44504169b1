#pragma once

#include "evofam/diskmap.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace evofam {

/// Van der Corput radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, unsigned base);

/// Portable uniform [0, 1) from a 64-bit engine (the standard distributions
/// are implementation-defined, which would break byte-identical reports).
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

/// n low-discrepancy points with area-uniform coverage of {|z| < radius}:
/// Halton(2, 3) pairs (u, v), Cranley-Patterson shifted by the seed, mapped to
/// radius * sqrt(u) * e^{2 pi i v}.
std::vector<Complex> disk_samples(std::size_t n, double radius, std::uint64_t seed);

/// n equispaced points on |z| = radius, starting at angle 0.
std::vector<Complex> circle_samples(double radius, int n);

} // namespace evofam
