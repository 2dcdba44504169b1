#include "evofam/errors.hpp"
#include "evofam/hamel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace evofam;
using namespace evofam::hamel;

namespace {

TimeVector lattice(const BasisPtr& basis, const char* q0, const char* q1)
{
    return TimeVector::from_strings(basis, {q0, q1});
}

// Independent evaluation: coordinates as doubles against the basis images.
double oracle_f(const AdditiveSpec& spec, const TimeVector& t)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.images.size(); ++i)
        sum += t.coords()[i].convert_to<double>() * spec.images[i];
    return sum;
}

TimeVector random_time(std::mt19937_64& rng, const BasisPtr& basis)
{
    std::uniform_int_distribution<int> num(-400, 400);
    std::uniform_int_distribution<int> den(1, 60);
    return TimeVector(basis, {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
}

} // namespace

TEST_SUITE("hamel")
{
    TEST_CASE("rational and constant parsing")
    {
        CHECK(*parse_rational("3") == Rational(3));
        CHECK(*parse_rational("-3/2") == Rational(-3, 2));
        CHECK(*parse_rational("0.125") == Rational(1, 8));
        CHECK(*parse_rational("+7/14") == Rational(1, 2));
        CHECK(*parse_rational("010") == Rational(10));
        CHECK(*parse_rational("007/08") == Rational(7, 8));
        CHECK_FALSE(parse_rational("1/0"));
        CHECK_FALSE(parse_rational("pi"));
        CHECK_FALSE(parse_rational(""));
        CHECK_FALSE(parse_rational("1e3"));

        CHECK(parse_constant("pi").convert_to<double>() == std::numbers::pi);
        CHECK(parse_constant("sqrt2").convert_to<double>() == std::numbers::sqrt2);
        CHECK(parse_constant("2*pi/3").convert_to<double>() == doctest::Approx(2.0 * std::numbers::pi / 3.0));
        CHECK(parse_constant("-3/2").convert_to<double>() == -1.5);
        CHECK_THROWS_AS(parse_constant("e"), ConfigError);
        CHECK_THROWS_AS(parse_constant("pi**2"), ConfigError);
        CHECK_THROWS_AS(parse_constant("sqrt-1"), ConfigError);
    }

    TEST_CASE("basis construction")
    {
        const BasisPtr std_basis = Basis::standard();
        REQUIRE(std_basis->size() == 2);
        CHECK((*std_basis)[0].rational);
        CHECK_FALSE((*std_basis)[1].rational);
        CHECK(*Basis::make({"1", "sqrt2"}) == *std_basis);
        CHECK_THROWS_AS(Basis::make({}), ConfigError);
        CHECK_THROWS_AS(Basis::make({"0"}), ConfigError);
        CHECK_THROWS_AS(Basis::make({"gamma"}), ConfigError);
        CHECK(Basis::make({"gamma"}, {0.5772})->size() == 1);
    }

    TEST_CASE("time vector arithmetic is exact")
    {
        const BasisPtr b = Basis::standard();
        const TimeVector x = lattice(b, "1/3", "2");
        const TimeVector y = lattice(b, "-1/6", "1/2");
        CHECK((x + y) == lattice(b, "1/6", "5/2"));
        CHECK((x - x).is_zero());
        CHECK((-(x - y)) == (y - x));
        CHECK((x * Rational(3)) == lattice(b, "1", "6"));
        CHECK(x.real_value() == doctest::Approx(1.0 / 3.0 + 2.0 * std::numbers::sqrt2));
        CHECK(TimeVector::from_double(b, 0.75) == lattice(b, "3/4", "0"));
        CHECK_THROWS_AS(TimeVector::from_strings(b, {"1"}), BasisMismatch);
        CHECK_THROWS_AS(TimeVector::from_strings(b, {"1", "pi"}), LatticeError);
        CHECK_THROWS_AS(TimeVector::from_double(Basis::make({"sqrt2"}), 1.0), LatticeError);
        const TimeVector foreign = TimeVector::unit(Basis::make({"1", "sqrt3"}), 0);
        CHECK_THROWS_AS(x + foreign, BasisMismatch);
    }

    TEST_CASE("additive function values")
    {
        const AdditiveSpec spec = AdditiveSpec::standard();
        const BasisPtr& b = spec.basis;
        CHECK(additive_eval(spec, TimeVector::zero(b)) == 0.0);
        CHECK(additive_eval(spec, lattice(b, "3/2", "0")) == doctest::Approx(1.5 * std::numbers::pi));
        CHECK(additive_eval(spec, TimeVector::unit(b, 1)) == 0.0);
        CHECK(additive_eval(spec, lattice(b, "-17/12", "1")) == doctest::Approx(-17.0 / 12.0 * std::numbers::pi));
        CHECK_THROWS_AS(additive_eval(spec, TimeVector::unit(Basis::make({"1", "sqrt3"}), 0)), BasisMismatch);
    }

    TEST_CASE("additivity holds exactly on random lattice pairs")
    {
        const AdditiveSpec spec = AdditiveSpec::standard();
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 1000; ++trial) {
            const TimeVector x = random_time(rng, spec.basis);
            const TimeVector y = random_time(rng, spec.basis);
            CHECK(additive_exact(spec, x + y) == additive_exact(spec, x) + additive_exact(spec, y));
            CHECK(additive_exact(spec, x * Rational(5, 3)) == additive_exact(spec, x) * Rational(5, 3));
            CHECK(additive_eval(spec, x) == doctest::Approx(oracle_f(spec, x)).epsilon(1e-12));
        }
    }

    TEST_CASE("nonlinearity detection")
    {
        CHECK(nonlinear_pair(AdditiveSpec::standard()) == std::make_pair(std::size_t{0}, std::size_t{1}));
        const BasisPtr b = Basis::standard();
        const AdditiveSpec linear{b, {2.0, 2.0 * std::numbers::sqrt2}, {"2", "2sqrt2"}};
        CHECK_FALSE(nonlinear_pair(linear));
        const AdditiveSpec bad{b, {1.0}, {"1"}};
        CHECK_THROWS_AS(validate(bad), ConfigError);
        const AdditiveSpec inf{b, {1.0, INFINITY}, {"1", "inf"}};
        CHECK_THROWS_AS(validate(inf), ConfigError);
    }

    TEST_CASE("continued fraction convergents")
    {
        const auto sqrt2 = convergents(parse_constant("sqrt2"), 6);
        REQUIRE(sqrt2.size() == 6);
        const Rational expected[] = {Rational(1), Rational(3, 2), Rational(7, 5),
                                     Rational(17, 12), Rational(41, 29), Rational(99, 70)};
        for (std::size_t k = 0; k < 6; ++k)
            CHECK(sqrt2[k] == expected[k]);
        const auto pi = convergents(parse_constant("pi"), 4);
        CHECK(pi[1] == Rational(22, 7));
        CHECK(pi[3] == Rational(355, 113));
        // rationals terminate
        CHECK(convergents(to_precise(Rational(7, 3))).size() == 2);
    }

    TEST_CASE("family axioms hold exactly")
    {
        const HamelSpecFile d = default_hamel_spec();
        const HamelFamily family(d.spec, d.start, d.end);
        const TimeVector s = lattice(d.spec.basis, "1/4", "0");
        const TimeVector t = lattice(d.spec.basis, "-1", "1");
        CHECK(family.at(s, s).kind() == DiskMap::Kind::rotation);
        CHECK(family.at(s, s).eval(Complex(0.3, 0.1)) == Complex(0.3, 0.1));
        const Complex z(0.2, -0.4);
        CHECK(std::abs(family.at(s, t).eval(z) - std::polar(1.0, -1.25 * std::numbers::pi) * z) < 1e-15);
        CHECK_THROWS_AS(family.at(t, s), DomainError);
        CHECK_THROWS_AS(family.at(s, lattice(d.spec.basis, "3", "0")), DomainError);

        const ExactAxiomAudit audit = exact_axiom_audit(family, 9, 200, 3);
        CHECK(audit.triples > 200);
        CHECK(audit.ef1);
        CHECK(audit.ef2);
        CHECK(audit.ef3);
        CHECK(audit.float_mismatch < 1e-15);
        CHECK(audit.rounded_sum_mismatch < 1e-12);
    }

    TEST_CASE("grid and near stay on the lattice and in the interval")
    {
        const HamelSpecFile d = default_hamel_spec();
        const HamelFamily family(d.spec, d.start, d.end);
        const auto grid = family.grid(5);
        REQUIRE(grid.size() == 5);
        CHECK(grid.front() == d.start);
        CHECK(grid.back() == d.end);
        CHECK(grid[1] == lattice(d.spec.basis, "1/2", "0"));
        CHECK_FALSE(family.jump_offsets().empty());
        const TimeVector c = lattice(d.spec.basis, "1", "0");
        bool big_jump = false;
        for (const TimeVector& p : family.near(c, 0.05)) {
            CHECK(std::abs(p.real_value() - 1.0) <= 0.05);
            CHECK(family.precedes(d.start, p));
            CHECK(family.precedes(p, d.end));
            const double phase = std::abs(additive_eval(d.spec, p - c));
            big_jump = big_jump || phase > 1.0;
        }
        CHECK(big_jump);
        CHECK_THROWS_AS(HamelFamily(d.spec, d.end, d.start), DomainError);
        CHECK_THROWS_AS(HamelFamily(d.spec, TimeVector::zero(Basis::make({"1", "sqrt3"})), d.end), BasisMismatch);
    }

    TEST_CASE("discontinuity witness")
    {
        const HamelSpecFile d = default_hamel_spec();
        const HamelFamily family(d.spec, d.start, d.end);
        const DiscontinuityWitness w = discontinuity_witness(d.spec, family, DiskRegion(0.5));
        CHECK(w.limit == TimeVector::unit(d.spec.basis, 1));
        REQUIRE(w.times.size() >= 5);
        CHECK(w.times[3] == lattice(d.spec.basis, "17/12", "0"));
        for (std::size_t n = 0; n < w.times.size(); ++n) {
            // |e^{i pi p/q} - 1| r on the circle, sampled at 64 angles (exact for rotations)
            const double q = w.times[n].coords()[0].convert_to<double>();
            CHECK(w.right_distances[n] == doctest::Approx(0.5 * std::abs(std::polar(1.0, std::numbers::pi * q) - 1.0)));
        }
        CHECK(w.gap == doctest::Approx(0.7933533402912353));
        CHECK(w.left_gap == doctest::Approx(w.gap));
        CHECK(std::abs(w.times.back().real_value() - std::numbers::sqrt2) < 1e-6);

        const AdditiveSpec linear{d.spec.basis, {2.0, 2.0 * std::numbers::sqrt2}, {"2", "2sqrt2"}};
        CHECK_THROWS_AS(discontinuity_witness(linear, HamelFamily(linear, d.start, d.end), DiskRegion(0.5)),
                        NotDiscontinuous);
        const TimeVector one = TimeVector::unit(d.spec.basis, 0);
        CHECK_THROWS_AS(discontinuity_witness(d.spec, HamelFamily(d.spec, d.start, one), DiskRegion(0.5)),
                        DomainError);
    }

    TEST_CASE("spec files")
    {
        const HamelSpecFile s = parse_hamel_spec(R"(
name = "pi-sqrt3"
basis = ["1", "sqrt3"]
images = ["pi", 0.0]
start = ["0", "0"]
end = ["5/2", "0"]
)");
        CHECK(s.name == "pi-sqrt3");
        CHECK(s.spec.images[0] == std::numbers::pi);
        CHECK(s.end.real_value() == 2.5);

        CHECK(parse_hamel_spec("basis = [\"1\", \"sqrt2\"]\nimages = [\"pi\", 0]\n").end.real_value() == 2.0);
        CHECK_THROWS_AS(parse_hamel_spec("basis = [\"1\", \"sqrt2\"\nimages = 3"), ConfigError);
        CHECK_THROWS_AS(parse_hamel_spec("images = [1.0]"), ConfigError);
        CHECK_THROWS_AS(parse_hamel_spec("basis = [\"1\", \"sqrt2\"]\nimages = [1.0]"), ConfigError);
        CHECK_THROWS_AS(parse_hamel_spec("basis = [\"1\", \"sqrt2\"]\nimages = [1.0, 0.0]\nstart = [\"pi\", \"0\"]"),
                        ConfigError);
        CHECK_THROWS_AS(parse_hamel_spec("basis = [\"1\", \"sqrt2\"]\nimages = [1.0, 0.0]\nend = [\"-1\", \"0\"]"),
                        ConfigError);
        CHECK_THROWS_AS(load_hamel_spec("/nonexistent/spec.toml"), ConfigError);
    }
}
