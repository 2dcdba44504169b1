#include "evofam/sampling.hpp"

#include <cmath>
#include <numbers>

namespace evofam {

double radical_inverse(std::uint64_t index, unsigned base)
{
    double result = 0.0;
    double scale = 1.0 / base;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale /= base;
    }
    return result;
}

std::vector<Complex> disk_samples(std::size_t n, double radius, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const double shift_u = uniform01(rng);
    const double shift_v = uniform01(rng);
    std::vector<Complex> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        // index k+1 skips the all-zero Halton point
        const double u = std::fmod(radical_inverse(k + 1, 2) + shift_u, 1.0);
        const double v = std::fmod(radical_inverse(k + 1, 3) + shift_v, 1.0);
        out.push_back(std::polar(radius * std::sqrt(u), 2.0 * std::numbers::pi * v));
    }
    return out;
}

std::vector<Complex> circle_samples(double radius, int n)
{
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / n));
    return out;
}

} // namespace evofam
