#include "evofam/audit.hpp"
#include "evofam/diskmap.hpp"
#include "evofam/errors.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace evofam;
using evofam::testing::random_in_disk;

TEST_SUITE("diskmap")
{
    TEST_CASE("primitive values")
    {
        const Complex z{0.3, 0.1};
        CHECK(DiskMap::identity().eval(z) == z);

        const Complex lambda{0.4, -0.2};
        CHECK(std::abs(DiskMap::mobius(lambda).eval(0.0) - lambda) < 1e-16);

        const DiskMap round_trip = DiskMap::compose(DiskMap::mobius(-lambda), DiskMap::mobius(lambda));
        CHECK(std::abs(round_trip.eval(Complex(0.0, 0.5)) - Complex(0.0, 0.5)) < 1e-15);

        CHECK(std::abs(DiskMap::rotation(std::numbers::pi / 2).eval(0.5) - Complex(0.0, 0.5)) < 1e-16);
        CHECK(std::abs(DiskMap::scale(Complex(0.0, 0.5)).eval(0.5) - Complex(0.0, 0.25)) < 1e-16);
    }

    TEST_CASE("primitive derivatives")
    {
        const Complex lambda{0.3, 0.6};
        CHECK(DiskMap::scale(lambda).deriv(Complex(0.2, -0.7)) == lambda);
        CHECK(std::abs(DiskMap::mobius(lambda).deriv(0.0) - (1.0 - std::norm(lambda))) < 1e-15);
        const DiskMap product = DiskMap::compose(DiskMap::scale(0.5), DiskMap::scale(0.4));
        CHECK(std::abs(product.deriv(0.2) - 0.2) < 1e-16);
        CHECK(std::abs(DiskMap::rotation(1.0).deriv(0.3) - std::polar(1.0, 1.0)) < 1e-16);
    }

    TEST_CASE("domain errors")
    {
        CHECK_THROWS_AS(DiskMap::identity().eval(1.0), DomainError);
        CHECK_THROWS_AS(DiskMap::identity().deriv(Complex(0.8, 0.8)), DomainError);
        CHECK_THROWS_AS(DiskMap::mobius(1.0), DomainError);
        CHECK_THROWS_AS(DiskMap::mobius(Complex(0.0, -1.2)), DomainError);
        CHECK_THROWS_AS(DiskMap::scale(1.5), DomainError);
        CHECK_NOTHROW(DiskMap::scale(Complex(0.0, 1.0)));
        CHECK_THROWS_AS(DiskMap::custom("bad", [](Complex z) { return Jet{z, 1.0}; }, 1.5), DomainError);
        CHECK_THROWS_AS(DiskMap::custom("bad", [](Complex z) { return Jet{z, 1.0}; }, 0.0), DomainError);
    }

    TEST_CASE("structure")
    {
        const DiskMap f = DiskMap::mobius(0.25);
        CHECK(structurally_equal(DiskMap::compose(DiskMap::identity(), f), f));
        CHECK(structurally_equal(DiskMap::compose(f, DiskMap::identity()), f));
        const DiskMap g = DiskMap::compose(DiskMap::rotation(0.5), DiskMap::compose(f, DiskMap::scale(0.5)));
        CHECK(g.kind() == DiskMap::Kind::compose);
        CHECK(g.size() == 3);
        CHECK(g.outer().kind() == DiskMap::Kind::rotation);
        CHECK(g.inner().inner().parameter() == Complex(0.5));
        CHECK(g.describe() == "rot(0.5) o mobius(0.25+0i) o scale(0.5+0i)");
        CHECK_THROWS_AS((void)f.outer(), std::logic_error);
        CHECK_FALSE(structurally_equal(DiskMap::rotation(0.5), DiskMap::rotation(0.25)));
    }

    TEST_CASE("property: Mobius closed form and inverse")
    {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 2000; ++i) {
            const Complex lambda = random_in_disk(rng, 0.99);
            const Complex z = random_in_disk(rng, 0.99);
            const DiskMap m = DiskMap::mobius(lambda);
            REQUIRE(std::abs(m.eval(z) - testing::mobius_oracle(lambda, z)) < 1e-14);
            REQUIRE(std::abs(m.deriv(z) - testing::mobius_deriv_oracle(lambda, z)) <
                    1e-12 * std::abs(testing::mobius_deriv_oracle(lambda, z)) + 1e-15);
            const Complex back = DiskMap::compose(DiskMap::mobius(-lambda), m).eval(z);
            REQUIRE(std::abs(back - z) < 1e-11);
        }
    }

    TEST_CASE("property: random trees are self-maps with chain-rule derivatives")
    {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 300; ++i) {
            const DiskMap f = random_map(rng, 6);
            for (int k = 0; k < 8; ++k) {
                const Complex z = random_in_disk(rng, 0.9);
                const Jet j = f.jet(z);
                REQUIRE(std::abs(j.value) < 1.0);
                REQUIRE(j.value == f.eval(z));
                // central difference along both axes
                const double h = 1e-6;
                const Complex dx = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
                const Complex dy = (f.eval(z + Complex(0, h)) - f.eval(z - Complex(0, h))) / Complex(0, 2.0 * h);
                REQUIRE(std::abs(j.derivative - dx) < 1e-6 * (1.0 + std::abs(j.derivative)));
                REQUIRE(std::abs(j.derivative - dy) < 1e-6 * (1.0 + std::abs(j.derivative)));
            }
        }
    }

    TEST_CASE("Blaschke product")
    {
        const Complex a{0.3, -0.4};
        const DiskMap b = blaschke2(a);
        CHECK(std::abs(b.eval(-a)) < 1e-16);
        CHECK(std::abs(b.eval(0.0)) == 0.0);
        CHECK(std::abs(b.deriv(0.0) - a) < 1e-16);
        CHECK_THROWS_AS(blaschke2(1.0), DomainError);
    }
}
