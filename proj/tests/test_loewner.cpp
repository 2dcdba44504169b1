#include "evofam/diagnostics.hpp"
#include "evofam/errors.hpp"
#include "evofam/loewner.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace evofam;

TEST_SUITE("loewner")
{
    TEST_CASE("Newton inversion")
    {
        const DiskMap f = DiskMap::compose(DiskMap::mobius(Complex(0.2, 0.1)), DiskMap::scale(0.7));
        const Complex w = Complex(0.3, -0.4);
        const InversionResult r = invert_univalent(f, f.eval(w), 0.0);
        CHECK(std::abs(r.w - w) < 1e-11);
        CHECK(r.residual < 1e-12);
        CHECK_FALSE(r.used_fallback);

        // target outside f(D): iterates pile up against the circle
        CHECK_THROWS_AS(invert_univalent(DiskMap::scale(0.5), 0.8, 0.0), RangeError);
    }

    TEST_CASE("property: inversion of random Mobius compositions")
    {
        std::mt19937_64 rng(21);
        for (int i = 0; i < 200; ++i) {
            const DiskMap f = DiskMap::compose(DiskMap::mobius(testing::random_in_disk(rng, 0.8)),
                                               DiskMap::rotation(uniform(rng, -3.0, 3.0)));
            const Complex w = testing::random_in_disk(rng, 0.9);
            const InversionResult r = invert_univalent(f, f.eval(w), testing::random_in_disk(rng, 0.5));
            REQUIRE(std::abs(f.eval(r.w) - f.eval(w)) < 1e-12);
        }
    }

    TEST_CASE("radial chain recovers the radial family")
    {
        const double T = 1.0;
        const LoewnerChain chain{make_interval(0.0, T),
                                 [T](double t) { return DiskMap::scale(std::exp(-(T - t))); }, "radial"};
        const EvolutionFamily loewner = from_loewner_chain(chain);
        const EvolutionFamily radial = make_radial(0.0, T);
        CHECK(loewner.exactness() == Exactness::iterative);
        CHECK(loewner.at(0.4, 0.4).kind() == DiskMap::Kind::identity);
        const auto times = radial.grid(9);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
            for (std::size_t j = i; j < times.size(); ++j)
                worst = std::max(worst, lu_distance(loewner.at(times[i], times[j]), radial.at(times[i], times[j]),
                                                    DiskRegion(0.9), 64));
        CHECK(worst < 1e-10);
        // derivative: f_s'(z) / f_t'(w) = e^{-(t-s)}
        CHECK(std::abs(loewner.at(0.2, 0.7).deriv(0.3) - std::exp(-0.5)) < 1e-12);
    }

    TEST_CASE("Mobius chain obeys the semigroup law")
    {
        auto c = [](double t) { return std::polar(0.3, t); };
        const LoewnerChain chain{make_interval(0.0, 1.0), [c](double t) { return DiskMap::mobius(c(t)); }, "mobius"};
        const EvolutionFamily f = from_loewner_chain(chain);
        GridSpec grid;
        CHECK(semigroup_residual(f, grid) < 1e-9);
        // closed-form inverse oracle sigma_{-c(t)} o sigma_{c(s)}
        const Complex z{0.1, 0.6};
        const Complex expected = testing::mobius_oracle(-c(0.8), testing::mobius_oracle(c(0.1), z));
        CHECK(std::abs(f.at(0.1, 0.8).eval(z) - expected) < 1e-11);
    }

    TEST_CASE("chains induced by a family")
    {
        const EvolutionFamily radial = make_radial(0.0, 1.0);
        const LoewnerChain chain = loewner_chain_of(radial, 1.0);
        CHECK(std::abs(chain.member(0.25).eval(0.5) - std::exp(-0.75) * 0.5) < 1e-16);
        CHECK_THROWS_AS(loewner_chain_of(radial, 2.0), DomainError);
        CHECK_THROWS_AS(from_loewner_chain(chain, 0.0), DomainError);
    }
}
