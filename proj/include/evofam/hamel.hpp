#pragma once

// Desk-scale discontinuous evolution family w_{s,t}(z) = e^{i f(t-s)} z.
//
// f is additive but not linear. A genuine Hamel function needs a Hamel basis
// of R over Q, so time is restricted to the Q-span of a finite basis assumed
// Q-linearly independent (default (1, sqrt2)). On that lattice f is defined
// by its values on the basis, and every time is an exact rational coordinate
// vector, so the evolution axioms hold in exact arithmetic.

#include "evofam/diagnostics.hpp"
#include "evofam/diskmap.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evofam::hamel {

using Rational = boost::multiprecision::cpp_rational;
using Precise = boost::multiprecision::cpp_bin_float_50;

/// Exact value of an integer, p/q or finite decimal literal; nullopt otherwise.
std::optional<Rational> parse_rational(std::string_view text);

/// 50-digit value of a product/quotient of atoms: rational literals, "pi",
/// "sqrtN". Examples: "1", "-3/2", "pi", "sqrt2", "pi*sqrt2", "2*pi/3".
/// Throws ConfigError on anything else.
Precise parse_constant(std::string_view text);

Precise to_precise(const Rational& q);

struct BasisElement {
    std::string name;
    Precise value;
    std::optional<Rational> rational;  // set when the element is a rational number
};

class Basis;
using BasisPtr = std::shared_ptr<const Basis>;

/// Finite list of reals the caller asserts to be Q-linearly independent.
class Basis {
public:
    /// Elements are parsed with parse_constant; where that fails, the matching
    /// fallback float is used. Throws ConfigError if an element has neither, or
    /// is zero, or if the list is empty.
    static BasisPtr make(const std::vector<std::string>& names, const std::vector<std::optional<double>>& fallbacks = {});
    /// (1, sqrt2)
    static BasisPtr standard();

    std::size_t size() const { return elements_.size(); }
    const BasisElement& operator[](std::size_t i) const { return elements_.at(i); }
    const std::vector<BasisElement>& elements() const { return elements_; }

    friend bool operator==(const Basis& x, const Basis& y);

private:
    std::vector<BasisElement> elements_;
};

/// Lattice time: exact rational coordinates over a basis. Arithmetic is exact
/// on coordinates; real_value() is for reporting only.
class TimeVector {
public:
    /// Throws BasisMismatch if coords.size() differs from the basis size.
    TimeVector(BasisPtr basis, std::vector<Rational> coords);

    static TimeVector zero(BasisPtr basis);
    static TimeVector unit(BasisPtr basis, std::size_t i);
    /// A double is an exact dyadic rational, hence a lattice point whenever the
    /// basis contains a rational element. Throws LatticeError otherwise.
    static TimeVector from_double(BasisPtr basis, double x);
    /// One string per coordinate, each a rational literal. Throws LatticeError
    /// on non-rational coordinates and BasisMismatch on a count mismatch.
    static TimeVector from_strings(BasisPtr basis, const std::vector<std::string>& coords);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<Rational>& coords() const { return coords_; }

    double real_value() const;
    Precise precise_value() const;
    bool is_zero() const;
    std::string to_string() const;

    TimeVector operator+(const TimeVector& other) const;
    TimeVector operator-(const TimeVector& other) const;
    TimeVector operator-() const;
    TimeVector operator*(const Rational& k) const;
    friend bool operator==(const TimeVector& x, const TimeVector& y);

private:
    void require_same_basis(const TimeVector& other) const;

    BasisPtr basis_;
    std::vector<Rational> coords_;
};

/// Additive function on the lattice, fixed by its (float) images of the basis.
struct AdditiveSpec {
    BasisPtr basis;
    std::vector<double> images;
    std::vector<std::string> image_labels;

    /// (1, sqrt2) with images (pi, 0).
    static AdditiveSpec standard();
};

/// Throws ConfigError unless the basis is set and images match it in size and are finite.
void validate(const AdditiveSpec& spec);

/// f(t) = sum q_i f(b_i) in exact rational arithmetic (the images are exact
/// binary rationals). Throws BasisMismatch on a foreign basis.
Rational additive_exact(const AdditiveSpec& spec, const TimeVector& t);

/// additive_exact rounded to double.
double additive_eval(const AdditiveSpec& spec, const TimeVector& t);

/// First index pair (i, j) whose images are not proportional to the basis
/// values, i.e. f(b_j) b_i != f(b_i) b_j. nullopt when f is linear on the lattice.
std::optional<std::pair<std::size_t, std::size_t>> nonlinear_pair(const AdditiveSpec& spec);

/// Continued-fraction convergents p_n/q_n of x, at most `cap` of them.
std::vector<Rational> convergents(const Precise& x, std::size_t cap = 20);

/// w_{s,t}(z) = e^{i f(t-s)} z on lattice times a <= s <= t <= b.
///
/// Models TimeFamily with time_type = TimeVector. grid() is exact rational
/// interpolation between the endpoints; near() adds lattice offsets that are
/// short in real value but carry large f-values, which is where the
/// discontinuity hides from float grids.
class HamelFamily {
public:
    using time_type = TimeVector;

    /// Throws BasisMismatch if the endpoints are over another basis, DomainError unless a < b.
    HamelFamily(AdditiveSpec spec, TimeVector a, TimeVector b, std::string name = "default");

    const AdditiveSpec& spec() const { return state_->spec; }
    std::string label() const { return "hamel:" + state_->name; }

    /// Rotation by f(t - s); t - t is exactly zero so the diagonal is rotation(0).
    /// Throws BasisMismatch on foreign times and DomainError unless a <= s <= t <= b.
    DiskMap at(const TimeVector& s, const TimeVector& t) const;
    /// Real-time query; each double is resolved with TimeVector::from_double (LatticeError if impossible).
    DiskMap at(double s, double t) const;

    TimeVector start() const { return state_->a; }
    TimeVector end() const { return state_->b; }
    double real(const TimeVector& t) const { return t.real_value(); }
    /// s <= t, decided on 50-digit values.
    bool precedes(const TimeVector& s, const TimeVector& t) const;
    std::vector<TimeVector> grid(std::size_t n) const;
    std::vector<TimeVector> near(const TimeVector& t, double delta) const;

    /// Offsets e_n = (p_n/q_n) b_i - b_j for the convergents of b_j/b_i, plus
    /// the multiples k_n e_n with f(k_n e_n) close to pi. Empty for linear f.
    const std::vector<TimeVector>& jump_offsets() const { return state_->jumps; }

private:
    struct State {
        AdditiveSpec spec;
        TimeVector a;
        TimeVector b;
        std::string name;
        std::optional<std::size_t> rational_index;
        std::vector<TimeVector> jumps;  // decreasing |real value|
        std::vector<bool> tuned;        // jumps[k] is a pi-tuned multiple
    };
    std::shared_ptr<const State> state_;
};

HamelFamily hamel_family(const AdditiveSpec& spec, const TimeVector& a, const TimeVector& b);

struct DiscontinuityWitness {
    std::vector<TimeVector> times;  // t_1 .. t_N, converging in real value to `limit`
    TimeVector limit;
    double radius;
    std::vector<double> right_distances;  // lu_distance(w_{a,t_n}, w_{a,t*}, r)
    std::vector<double> left_distances;   // lu_distance(w_{t_n,b}, w_{t*,b}, r)
    /// min over n >= 3 of the distances: a finite-tail stand-in for the liminf
    double gap;
    double left_gap;
};

/// Sequence t_n = (p_n/q_n) b_i -> t* = b_j for the first nonlinear pair (i, j),
/// with the distance between w_{a,t_n} and w_{a,t*} (and the mirrored left
/// parameter distances) on |z| = r. Throws NotDiscontinuous for linear f and
/// DomainError if the sequence leaves the family interval.
DiscontinuityWitness discontinuity_witness(const AdditiveSpec& spec, const HamelFamily& family, DiskRegion r,
                                           int n_angles = 64);

struct ExactAxiomAudit {
    std::size_t triples = 0;
    bool ef1 = true;  // every transition is a rotation (non-constant)
    bool ef2 = true;  // t - t is zero and w_{t,t} is rotation(0)
    bool ef3 = true;  // (u - s) + (t - u) == t - s and f additive, both exactly
    /// max |double(f(u-s) + f(t-u)) - double(f(t-s))|: the composed angle,
    /// summed exactly and then rounded, against the direct angle
    double float_mismatch = 0.0;
    /// max |double(f(u-s)) + double(f(t-u)) - double(f(t-s))|: what naive
    /// float accumulation of the two angles would give (informational)
    double rounded_sum_mismatch = 0.0;
};

/// Checks the evolution axioms in exact arithmetic over every admissible
/// triple of an n-point lattice grid plus `random_triples` random lattice triples.
ExactAxiomAudit exact_axiom_audit(const HamelFamily& family, std::size_t n_time, std::size_t random_triples = 100,
                                  std::uint64_t seed = 0);

/// Contents of a Hamel spec file.
struct HamelSpecFile {
    AdditiveSpec spec;
    TimeVector start;
    TimeVector end;
    std::string name;
};

/// TOML keys: basis (strings), basis_fallbacks (floats, optional), images
/// (floats or constant strings such as "pi"), start / end (rational coordinate
/// strings), name (optional). Throws ConfigError on malformed input.
HamelSpecFile parse_hamel_spec(std::string_view toml_text);
HamelSpecFile load_hamel_spec(const std::string& path);
/// Standard spec on [0, 2].
HamelSpecFile default_hamel_spec();

} // namespace evofam::hamel
