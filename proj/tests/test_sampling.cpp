#include "evofam/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace evofam;

TEST_SUITE("sampling")
{
    TEST_CASE("radical inverse")
    {
        CHECK(radical_inverse(1, 2) == 0.5);
        CHECK(radical_inverse(2, 2) == 0.25);
        CHECK(radical_inverse(3, 2) == 0.75);
        CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3.0));
        CHECK(radical_inverse(5, 3) == doctest::Approx(7.0 / 9.0));
    }

    TEST_CASE("disk samples are reproducible, inside, and area-uniform")
    {
        const auto a = disk_samples(4096, 0.8, 17);
        const auto b = disk_samples(4096, 0.8, 17);
        CHECK(a == b);
        CHECK(a != disk_samples(4096, 0.8, 18));
        CHECK(std::all_of(a.begin(), a.end(), [](Complex z) { return std::abs(z) < 0.8; }));
        // fraction inside the half-radius disk is a quarter of the area
        const auto inner = std::count_if(a.begin(), a.end(), [](Complex z) { return std::abs(z) < 0.4; });
        CHECK(static_cast<double>(inner) / a.size() == doctest::Approx(0.25).epsilon(0.02));
        // upper half plane gets half the points
        const auto upper = std::count_if(a.begin(), a.end(), [](Complex z) { return z.imag() > 0.0; });
        CHECK(static_cast<double>(upper) / a.size() == doctest::Approx(0.5).epsilon(0.02));
    }

    TEST_CASE("circle samples")
    {
        const auto c = circle_samples(0.5, 8);
        REQUIRE(c.size() == 8);
        CHECK(c[0] == Complex(0.5, 0.0));
        for (const Complex z : c)
            CHECK(std::abs(z) == doctest::Approx(0.5));
        CHECK(std::abs(c[2] - Complex(0.0, 0.5)) < 1e-16);
    }

    TEST_CASE("portable uniform")
    {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 1000; ++i) {
            const double u = uniform01(rng);
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
        }
        std::mt19937_64 x(99), y(99);
        CHECK(uniform(x, -2.0, 3.0) == uniform(y, -2.0, 3.0));
    }
}
