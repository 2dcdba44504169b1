#include "evofam/bounds.hpp"
#include "evofam/errors.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace evofam;
using doctest::Approx;

TEST_SUITE("bounds")
{
    TEST_CASE("schwarz_pick_upper and center_bound")
    {
        CHECK(schwarz_pick_upper(0.0, 0.3) == Approx(0.3));
        CHECK(schwarz_pick_upper(0.4, 0.0) == Approx(0.4));
        CHECK(schwarz_pick_upper(0.5, 0.5) == Approx(0.8));
        CHECK(center_bound(0.0, 0.7) == Approx(0.7));
        CHECK(center_bound(0.5, 0.5) == Approx(0.8));
        CHECK_THROWS_AS(schwarz_pick_upper(1.0, 0.5), DomainError);
        CHECK_THROWS_AS(center_bound(0.5, -0.1), DomainError);
    }

    TEST_CASE("fixed_origin_growth and identity_deviation")
    {
        CHECK(fixed_origin_growth(0.3, 1.0) == Approx(0.3));
        CHECK(fixed_origin_growth(0.3, 0.0) == Approx(0.09));
        CHECK(fixed_origin_growth(0.5, 0.5) == Approx(0.4));
        CHECK(identity_deviation(0.7, 1.0) == 0.0);
        CHECK(identity_deviation(0.0, Complex(0.2, 0.3)) == 0.0);
        CHECK(identity_deviation(0.5, 0.0) == Approx(0.75));
        CHECK_THROWS_AS(fixed_origin_growth(0.5, 1.5), DomainError);
        CHECK_THROWS_AS(identity_deviation(0.5, Complex(0.0, 2.0)), DomainError);
    }

    TEST_CASE("Landau radius")
    {
        CHECK(landau_radius(1.0) == Approx(1.0));
        CHECK(landau_radius(0.6) == Approx(1.0 / 3.0));
        CHECK(landau_radius(0.8) == Approx(0.5));
        CHECK(landau_sigma_for_radius(0.5) == Approx(0.8));
        CHECK_THROWS_AS(landau_radius(0.0), DomainError);
        CHECK_THROWS_AS(landau_radius(1.1), DomainError);

        // monotone, and inverted by landau_sigma_for_radius
        double previous = 0.0;
        for (int k = 1; k <= 1000; ++k) {
            const double sigma = k / 1000.0;
            const double rho = landau_radius(sigma);
            REQUIRE(rho > previous);
            REQUIRE(landau_sigma_for_radius(rho) == Approx(sigma).epsilon(1e-12));
            previous = rho;
        }
    }

    TEST_CASE("lipschitz_bound")
    {
        CHECK(lipschitz_bound(0.2, 0.2, 0.5) == 0.0);
        CHECK(lipschitz_bound(0.0, 0.3, 0.5) == Approx(0.8));
        CHECK_THROWS_AS(lipschitz_bound(0.0, 0.6, 0.5), DomainError);
        CHECK_THROWS_AS(lipschitz_bound(0.0, 0.3, 1.0), DomainError);
    }

    TEST_CASE("hyperbolic_sum")
    {
        CHECK(hyperbolic_sum(0.37, 0.0) == Approx(0.37));
        CHECK(hyperbolic_sum(0.5, 0.5) == Approx(0.8));
        // fold the recursion e_k = (e_1 + e_{k-1}) / (1 + e_1 e_{k-1})
        double e = 0.0;
        const double expected[] = {0.5, 0.8, 1.3 / 1.4};
        for (const double x : expected) {
            e = hyperbolic_sum(0.5, e);
            CHECK(e == Approx(x).epsilon(1e-15));
        }
        CHECK_THROWS_AS(hyperbolic_sum(1.0, 0.2), DomainError);
    }

    TEST_CASE("property: hyperbolic_sum algebra")
    {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 5000; ++i) {
            const double a = 0.999 * uniform01(rng);
            const double b = 0.999 * uniform01(rng);
            const double c = 0.999 * uniform01(rng);
            REQUIRE(hyperbolic_sum(a, b) == Approx(hyperbolic_sum(b, a)).epsilon(1e-15));
            REQUIRE(hyperbolic_sum(hyperbolic_sum(a, b), c) ==
                    Approx(hyperbolic_sum(a, hyperbolic_sum(b, c))).epsilon(1e-12));
            REQUIRE(hyperbolic_sum(a, b) < 1.0);
            REQUIRE(hyperbolic_sum(a, b) >= std::max(a, b));
        }
    }

    TEST_CASE("property: bounds are attained by the extremal maps")
    {
        // sigma_{w0} attains the Schwarz-Pick bound on the ray through w0;
        // z * sigma_lambda(z) attains the fixed-origin growth bound.
        std::mt19937_64 rng(8);
        for (int i = 0; i < 1000; ++i) {
            const double r = 0.99 * uniform01(rng);
            const double w0 = 0.99 * uniform01(rng);
            const Complex extremal = testing::mobius_oracle(w0, r);
            REQUIRE(std::abs(extremal) == Approx(schwarz_pick_upper(r, w0)).epsilon(1e-12));
            const double lambda = 0.99 * uniform01(rng);
            REQUIRE(std::abs(r * testing::mobius_oracle(lambda, r)) ==
                    Approx(fixed_origin_growth(r, lambda)).epsilon(1e-12));
        }
    }

    TEST_CASE("DiskRegion and BoundLedger")
    {
        CHECK_THROWS_AS(DiskRegion(0.0), DomainError);
        CHECK_THROWS_AS(DiskRegion(1.5), DomainError);
        CHECK(DiskRegion(1.0).contains(0.99));
        CHECK_FALSE(DiskRegion(0.5).contains(0.5));

        const BoundLedger ledger = bound_ledger(DiskMap::scale(0.8), 0.5, 0.3, 0.6);
        CHECK(ledger.growth == Approx(fixed_origin_growth(0.5, 0.8)));
        CHECK(ledger.deviation == Approx(identity_deviation(0.5, 0.8)));
        CHECK(ledger.lipschitz == Approx(lipschitz_bound(0.5, 0.3, 0.6)));
        CHECK(ledger.landau_radius == Approx(0.5));
        CHECK_NOTHROW(ledger.validate());
        CHECK_THROWS_AS(bound_ledger(DiskMap::scale(0.0), 0.5, 0.3, 0.6), DomainError);
        BoundLedger broken = ledger;
        broken.growth = -1.0;
        CHECK_THROWS_AS(broken.validate(), DomainError);
    }
}
