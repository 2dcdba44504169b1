#include "evofam/hamel.hpp"

#include "evofam/errors.hpp"
#include "evofam/format.hpp"

#include <boost/math/constants/constants.hpp>

#include <toml.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace evofam::hamel {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// cpp_int's string constructor reads a leading 0 as an octal prefix.
boost::multiprecision::cpp_int decimal_int(std::string_view digits)
{
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos)
        return 0;
    return boost::multiprecision::cpp_int(std::string(digits.substr(first)));
}

std::optional<Rational> parse_unsigned_decimal(std::string_view s)
{
    const auto dot = s.find('.');
    if (dot == std::string_view::npos)
        return all_digits(s) ? std::optional<Rational>(Rational(decimal_int(s))) : std::nullopt;
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
        return std::nullopt;
    boost::multiprecision::cpp_int denominator = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        denominator *= 10;
    return Rational(decimal_int(std::string(whole) + std::string(frac)), denominator);
}

Rational exact(double x) { return Rational(x); }

Precise precise_sqrt(const Rational& q)
{
    return boost::multiprecision::sqrt(to_precise(q));
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
    text = trim(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::optional<Rational> value;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto p = parse_unsigned_decimal(trim(text.substr(0, slash)));
        const auto q = parse_unsigned_decimal(trim(text.substr(slash + 1)));
        if (!p || !q || *q == 0)
            return std::nullopt;
        value = *p / *q;
    } else {
        value = parse_unsigned_decimal(text);
    }
    if (value && negative)
        *value = -*value;
    return value;
}

Precise to_precise(const Rational& q)
{
    return Precise(boost::multiprecision::numerator(q)) / Precise(boost::multiprecision::denominator(q));
}

Precise parse_constant(std::string_view text)
{
    std::string_view rest = trim(text);
    if (rest.empty())
        throw ConfigError("empty constant");
    Precise sign = 1;
    if (rest.front() == '-') {
        sign = -1;
        rest.remove_prefix(1);
    }
    Precise value = 1;
    char op = '*';
    while (true) {
        const auto pos = rest.find_first_of("*/");
        const std::string_view atom = trim(rest.substr(0, pos));
        Precise factor;
        if (atom == "pi") {
            factor = boost::math::constants::pi<Precise>();
        } else if (atom.starts_with("sqrt")) {
            std::string_view arg = atom.substr(4);
            if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')')
                arg = arg.substr(1, arg.size() - 2);
            const auto q = parse_rational(arg);
            if (!q || *q < 0)
                throw ConfigError("bad square root in constant '" + std::string(text) + "'");
            factor = precise_sqrt(*q);
        } else if (const auto q = parse_rational(atom)) {
            factor = to_precise(*q);
        } else {
            throw ConfigError("cannot parse constant '" + std::string(text) + "'");
        }
        if (op == '*') {
            value *= factor;
        } else {
            if (factor == 0)
                throw ConfigError("division by zero in constant '" + std::string(text) + "'");
            value /= factor;
        }
        if (pos == std::string_view::npos)
            break;
        op = rest[pos];
        rest.remove_prefix(pos + 1);
    }
    return sign * value;
}

BasisPtr Basis::make(const std::vector<std::string>& names, const std::vector<std::optional<double>>& fallbacks)
{
    if (names.empty())
        throw ConfigError("basis must not be empty");
    auto basis = std::make_shared<Basis>();
    for (std::size_t i = 0; i < names.size(); ++i) {
        BasisElement e{names[i], 0, parse_rational(names[i])};
        try {
            e.value = parse_constant(names[i]);
        } catch (const ConfigError&) {
            if (i >= fallbacks.size() || !fallbacks[i] || !std::isfinite(*fallbacks[i]))
                throw;
            e.value = Precise(*fallbacks[i]);
        }
        if (e.value == 0)
            throw ConfigError("basis element '" + names[i] + "' is zero");
        basis->elements_.push_back(std::move(e));
    }
    return basis;
}

BasisPtr Basis::standard()
{
    static const BasisPtr shared = make({"1", "sqrt2"});
    return shared;
}

bool operator==(const Basis& x, const Basis& y)
{
    if (x.size() != y.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].name != y[i].name || x[i].value != y[i].value)
            return false;
    return true;
}

TimeVector::TimeVector(BasisPtr basis, std::vector<Rational> coords) : basis_(std::move(basis)), coords_(std::move(coords))
{
    if (!basis_)
        throw BasisMismatch("time vector needs a basis");
    if (coords_.size() != basis_->size())
        throw BasisMismatch("time vector has " + std::to_string(coords_.size()) + " coordinates for a basis of size " +
                            std::to_string(basis_->size()));
}

TimeVector TimeVector::zero(BasisPtr basis)
{
    const std::size_t n = basis ? basis->size() : 0;
    return TimeVector(std::move(basis), std::vector<Rational>(n, Rational(0)));
}

TimeVector TimeVector::unit(BasisPtr basis, std::size_t i)
{
    TimeVector out = zero(std::move(basis));
    if (i >= out.coords_.size())
        throw BasisMismatch("basis index out of range");
    out.coords_[i] = 1;
    return out;
}

TimeVector TimeVector::from_double(BasisPtr basis, double x)
{
    if (!std::isfinite(x))
        throw LatticeError("non-finite time");
    TimeVector out = zero(std::move(basis));
    for (std::size_t i = 0; i < out.basis_->size(); ++i) {
        const auto& r = (*out.basis_)[i].rational;
        if (r && *r != 0) {
            out.coords_[i] = exact(x) / *r;
            return out;
        }
    }
    throw LatticeError("time " + format_real(x) + " is not a lattice point: the basis has no rational element");
}

TimeVector TimeVector::from_strings(BasisPtr basis, const std::vector<std::string>& coords)
{
    std::vector<Rational> q;
    for (const auto& c : coords) {
        const auto r = parse_rational(c);
        if (!r)
            throw LatticeError("coordinate '" + c + "' is not rational");
        q.push_back(*r);
    }
    return TimeVector(std::move(basis), std::move(q));
}

Precise TimeVector::precise_value() const
{
    Precise sum = 0;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] != 0)
            sum += to_precise(coords_[i]) * (*basis_)[i].value;
    return sum;
}

double TimeVector::real_value() const { return precise_value().convert_to<double>(); }

bool TimeVector::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

std::string TimeVector::to_string() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i > 0)
            out << " + ";
        out << coords_[i] << "*[" << (*basis_)[i].name << "]";
    }
    return out.str();
}

void TimeVector::require_same_basis(const TimeVector& other) const
{
    if (basis_ != other.basis_ && !(*basis_ == *other.basis_))
        throw BasisMismatch("time vectors over different bases");
}

TimeVector TimeVector::operator+(const TimeVector& other) const
{
    require_same_basis(other);
    TimeVector out = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        out.coords_[i] += other.coords_[i];
    return out;
}

TimeVector TimeVector::operator-(const TimeVector& other) const
{
    require_same_basis(other);
    TimeVector out = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        out.coords_[i] -= other.coords_[i];
    return out;
}

TimeVector TimeVector::operator-() const { return zero(basis_) - *this; }

TimeVector TimeVector::operator*(const Rational& k) const
{
    TimeVector out = *this;
    for (auto& q : out.coords_)
        q *= k;
    return out;
}

bool operator==(const TimeVector& x, const TimeVector& y)
{
    x.require_same_basis(y);
    return x.coords_ == y.coords_;
}

AdditiveSpec AdditiveSpec::standard()
{
    return AdditiveSpec{Basis::standard(), {boost::math::constants::pi<double>(), 0.0}, {"pi", "0"}};
}

void validate(const AdditiveSpec& spec)
{
    if (!spec.basis)
        throw ConfigError("additive spec needs a basis");
    if (spec.images.size() != spec.basis->size())
        throw ConfigError("additive spec has " + std::to_string(spec.images.size()) + " images for " +
                          std::to_string(spec.basis->size()) + " basis elements");
    for (const double v : spec.images)
        if (!std::isfinite(v))
            throw ConfigError("additive spec images must be finite");
}

Rational additive_exact(const AdditiveSpec& spec, const TimeVector& t)
{
    if (t.basis() != spec.basis && !(*t.basis() == *spec.basis))
        throw BasisMismatch("time vector and additive spec use different bases");
    Rational sum = 0;
    for (std::size_t i = 0; i < spec.images.size(); ++i)
        if (t.coords()[i] != 0 && spec.images[i] != 0.0)
            sum += t.coords()[i] * exact(spec.images[i]);
    return sum;
}

double additive_eval(const AdditiveSpec& spec, const TimeVector& t)
{
    return additive_exact(spec, t).convert_to<double>();
}

std::optional<std::pair<std::size_t, std::size_t>> nonlinear_pair(const AdditiveSpec& spec)
{
    validate(spec);
    const auto& b = *spec.basis;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            const Precise fi(spec.images[i]);
            const Precise fj(spec.images[j]);
            const Precise cross = fj * b[i].value - fi * b[j].value;
            const Precise scale = abs(fj * b[i].value) + abs(fi * b[j].value);
            if (scale > 0 && abs(cross) > Precise(1e-12) * scale)
                return std::make_pair(i, j);
        }
    return std::nullopt;
}

std::vector<Rational> convergents(const Precise& x, std::size_t cap)
{
    using boost::multiprecision::cpp_int;
    std::vector<Rational> out;
    cpp_int h_prev = 1, h_prev2 = 0;
    cpp_int k_prev = 0, k_prev2 = 1;
    Precise rest = x;
    for (std::size_t n = 0; n < cap; ++n) {
        const Precise whole = floor(rest);
        const cpp_int a = whole.convert_to<cpp_int>();
        const cpp_int h = a * h_prev + h_prev2;
        const cpp_int k = a * k_prev + k_prev2;
        out.emplace_back(h, k);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const Precise frac = rest - whole;
        if (frac < Precise(1e-40))
            break;
        rest = 1 / frac;
    }
    return out;
}

HamelFamily::HamelFamily(AdditiveSpec spec, TimeVector a, TimeVector b, std::string name)
{
    validate(spec);
    if (!(*a.basis() == *spec.basis) || !(*b.basis() == *spec.basis))
        throw BasisMismatch("interval endpoints are not over the spec's basis");
    if (!(a.precise_value() < b.precise_value()))
        throw DomainError("hamel interval needs a < b");

    State st{std::move(spec), std::move(a), std::move(b), std::move(name), std::nullopt, {}, {}};
    for (std::size_t i = 0; i < st.spec.basis->size(); ++i)
        if ((*st.spec.basis)[i].rational) {
            st.rational_index = i;
            break;
        }

    if (const auto pair = nonlinear_pair(st.spec)) {
        const auto [i, j] = *pair;
        const auto& basis = st.spec.basis;
        const double pi = boost::math::constants::pi<double>();
        std::vector<std::pair<TimeVector, bool>> found;
        for (const Rational& c : convergents((*basis)[j].value / (*basis)[i].value)) {
            const TimeVector e = TimeVector::unit(basis, i) * c - TimeVector::unit(basis, j);
            if (e.is_zero())
                continue;
            found.emplace_back(e, false);
            const double phi = additive_eval(st.spec, e);
            if (std::abs(phi) > 1e-300) {
                // k with f(k e) close to pi, denominator 2^20
                const double k = std::round(pi / phi * 1048576.0) / 1048576.0;
                if (k != 0.0)
                    found.emplace_back(e * exact(k), true);
            }
        }
        std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
            return abs(x.first.precise_value()) > abs(y.first.precise_value());
        });
        for (auto& [e, tuned] : found) {
            st.jumps.push_back(std::move(e));
            st.tuned.push_back(tuned);
        }
    }
    state_ = std::make_shared<const State>(std::move(st));
}

bool HamelFamily::precedes(const TimeVector& s, const TimeVector& t) const
{
    if (s == t)
        return true;
    return (t - s).precise_value() >= 0;
}

DiskMap HamelFamily::at(const TimeVector& s, const TimeVector& t) const
{
    if (!(*s.basis() == *state_->spec.basis) || !(*t.basis() == *state_->spec.basis))
        throw BasisMismatch("time vector over a foreign basis");
    if (!(precedes(state_->a, s) && precedes(s, t) && precedes(t, state_->b)))
        throw DomainError(label() + ": (" + s.to_string() + ", " + t.to_string() + ") is not admissible");
    const TimeVector gap = t - s;
    return DiskMap::rotation(gap.is_zero() ? 0.0 : additive_eval(state_->spec, gap));
}

DiskMap HamelFamily::at(double s, double t) const
{
    return at(TimeVector::from_double(state_->spec.basis, s), TimeVector::from_double(state_->spec.basis, t));
}

std::vector<TimeVector> HamelFamily::grid(std::size_t n) const
{
    if (n < 2)
        throw DomainError("time grid needs at least two points");
    const TimeVector span = state_->b - state_->a;
    std::vector<TimeVector> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(state_->a + span * Rational(static_cast<long long>(k), static_cast<long long>(n - 1)));
    return out;
}

std::vector<TimeVector> HamelFamily::near(const TimeVector& t, double delta) const
{
    std::vector<TimeVector> offsets;
    const auto& basis = state_->spec.basis;
    if (state_->rational_index && delta > 0.0) {
        const std::size_t i = *state_->rational_index;
        const Rational q = exact(std::floor(delta * 0x1.0p30) * 0x1.0p-30);
        if (q > 0) {
            const TimeVector step = TimeVector::unit(basis, i) * (q / *(*basis)[i].rational);
            offsets.push_back(step);
            offsets.push_back(step * Rational(1, 2));
        }
    }
    // the largest plain offset and the largest pi-tuned multiple that fit
    bool plain = false;
    bool tuned = false;
    for (std::size_t k = 0; k < state_->jumps.size() && !(plain && tuned); ++k) {
        const TimeVector& e = state_->jumps[k];
        if (abs(e.precise_value()) > Precise(delta))
            continue;
        const bool is_plain = !state_->tuned[k];
        if (is_plain && !plain) {
            plain = true;
            offsets.push_back(e);
        } else if (!is_plain && !tuned) {
            tuned = true;
            offsets.push_back(e);
        }
    }
    std::vector<TimeVector> out;
    for (const auto& o : offsets)
        for (const TimeVector& p : {t - o, t + o})
            if (precedes(state_->a, p) && precedes(p, state_->b))
                out.push_back(p);
    return out;
}

HamelFamily hamel_family(const AdditiveSpec& spec, const TimeVector& a, const TimeVector& b)
{
    return HamelFamily(spec, a, b);
}

DiscontinuityWitness discontinuity_witness(const AdditiveSpec& spec, const HamelFamily& family, DiskRegion r,
                                           int n_angles)
{
    const auto pair = nonlinear_pair(spec);
    if (!pair)
        throw NotDiscontinuous("images are proportional to the basis values; f is linear, hence continuous");
    const auto [i, j] = *pair;
    const auto& basis = spec.basis;

    DiscontinuityWitness w{{}, TimeVector::unit(basis, j), r.radius(), {}, {}, 0.0, 0.0};
    for (const Rational& c : convergents((*basis)[j].value / (*basis)[i].value))
        w.times.push_back(TimeVector::unit(basis, i) * c);

    const TimeVector a = family.start();
    const TimeVector b = family.end();
    for (const TimeVector& t : w.times)
        if (!(family.precedes(a, t) && family.precedes(t, b)))
            throw DomainError("witness time " + t.to_string() + " lies outside the family interval");
    if (!(family.precedes(a, w.limit) && family.precedes(w.limit, b)))
        throw DomainError("witness limit lies outside the family interval");

    const DiskMap right_limit = family.at(a, w.limit);
    const DiskMap left_limit = family.at(w.limit, b);
    for (const TimeVector& t : w.times) {
        w.right_distances.push_back(lu_distance(family.at(a, t), right_limit, r, n_angles));
        w.left_distances.push_back(lu_distance(family.at(t, b), left_limit, r, n_angles));
    }
    const std::size_t tail = std::min<std::size_t>(2, w.times.size() - 1);
    w.gap = *std::min_element(w.right_distances.begin() + static_cast<std::ptrdiff_t>(tail), w.right_distances.end());
    w.left_gap = *std::min_element(w.left_distances.begin() + static_cast<std::ptrdiff_t>(tail), w.left_distances.end());
    return w;
}

namespace {

TimeVector random_lattice_time(const HamelFamily& family, std::mt19937_64& rng)
{
    const TimeVector a = family.start();
    const TimeVector span = family.end() - a;
    const auto& basis = a.basis();
    const double length = span.real_value();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double target = length * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        TimeVector offset = TimeVector::zero(basis);
        std::vector<Rational> coords(basis->size(), Rational(0));
        Precise rest(target);
        for (std::size_t k = 1; k < basis->size(); ++k) {
            coords[k] = Rational(static_cast<long long>(rng() % 2001) - 1000, static_cast<long long>(rng() % 999) + 1);
            rest -= to_precise(coords[k]) * (*basis)[k].value;
        }
        const double lead = (rest / (*basis)[0].value).convert_to<double>();
        coords[0] = exact(std::round(lead * 0x1.0p20) * 0x1.0p-20);
        const TimeVector t = a + TimeVector(basis, coords);
        if (family.precedes(a, t) && family.precedes(t, family.end()))
            return t;
    }
    return a;
}

} // namespace

ExactAxiomAudit exact_axiom_audit(const HamelFamily& family, std::size_t n_time, std::size_t random_triples,
                                  std::uint64_t seed)
{
    std::vector<std::array<TimeVector, 3>> triples;
    const auto times = family.grid(n_time);
    for (std::size_t i = 0; i < times.size(); ++i)
        for (std::size_t j = i; j < times.size(); ++j)
            for (std::size_t k = j; k < times.size(); ++k)
                triples.push_back({times[i], times[j], times[k]});
    std::mt19937_64 rng(seed);
    for (std::size_t n = 0; n < random_triples; ++n) {
        std::array<TimeVector, 3> tri{random_lattice_time(family, rng), random_lattice_time(family, rng),
                                      random_lattice_time(family, rng)};
        std::sort(tri.begin(), tri.end(), [&](const TimeVector& x, const TimeVector& y) {
            return x.precise_value() < y.precise_value();
        });
        triples.push_back(tri);
    }

    const AdditiveSpec& spec = family.spec();
    ExactAxiomAudit audit;
    for (const auto& [s, u, t] : triples) {
        ++audit.triples;
        for (const TimeVector& x : {s, u, t}) {
            const DiskMap diag = family.at(x, x);
            audit.ef2 = audit.ef2 && (x - x).is_zero() && diag.kind() == DiskMap::Kind::rotation && diag.angle() == 0.0;
        }
        audit.ef1 = audit.ef1 && family.at(s, t).kind() == DiskMap::Kind::rotation;
        const TimeVector first = u - s;
        const TimeVector second = t - u;
        const TimeVector whole = t - s;
        audit.ef3 = audit.ef3 && first + second == whole &&
                    additive_exact(spec, first) + additive_exact(spec, second) == additive_exact(spec, whole);
        audit.ef3 = audit.ef3 && family.at(s, u).kind() == DiskMap::Kind::rotation;
        const Rational composed = additive_exact(spec, first) + additive_exact(spec, second);
        const double direct = additive_eval(spec, whole);
        detail::raise_max(audit.float_mismatch, std::abs(composed.convert_to<double>() - direct));
        detail::raise_max(audit.rounded_sum_mismatch,
                          std::abs(additive_eval(spec, first) + additive_eval(spec, second) - direct));
    }
    return audit;
}

HamelSpecFile parse_hamel_spec(std::string_view toml_text)
{
    toml::table doc;
    try {
        doc = toml::parse(toml_text);
    } catch (const toml::parse_error& e) {
        throw ConfigError(std::string("malformed hamel spec: ") + std::string(e.description()));
    }

    auto strings = [&](const char* key, bool required) {
        std::vector<std::string> out;
        const toml::array* arr = doc[key].as_array();
        if (!arr) {
            if (required)
                throw ConfigError(std::string("hamel spec needs an array '") + key + "'");
            return out;
        }
        for (const auto& node : *arr) {
            if (const auto s = node.value<std::string>())
                out.push_back(*s);
            else if (const auto i = node.value<std::int64_t>(); i && node.is_integer())
                out.push_back(std::to_string(*i));
            else
                throw ConfigError(std::string("'") + key + "' entries must be strings or integers");
        }
        return out;
    };

    const auto names = strings("basis", true);
    std::vector<std::optional<double>> fallbacks;
    if (const toml::array* arr = doc["basis_fallbacks"].as_array())
        for (const auto& node : *arr)
            fallbacks.push_back(node.value<double>());

    const BasisPtr basis = Basis::make(names, fallbacks);

    AdditiveSpec spec{basis, {}, {}};
    const toml::array* images = doc["images"].as_array();
    if (!images)
        throw ConfigError("hamel spec needs an array 'images'");
    for (const auto& node : *images) {
        if (const auto s = node.value_exact<std::string>()) {
            spec.images.push_back(parse_constant(*s).convert_to<double>());
            spec.image_labels.push_back(*s);
        } else if (const auto d = node.value<double>()) {
            spec.images.push_back(*d);
            spec.image_labels.push_back(format_real(*d));
        } else {
            throw ConfigError("'images' entries must be numbers or constant strings");
        }
    }
    validate(spec);

    auto endpoint = [&](const char* key, const char* fallback_value) {
        auto coords = strings(key, false);
        if (coords.empty()) {
            coords.assign(basis->size(), "0");
            coords[0] = fallback_value;
        }
        try {
            return TimeVector::from_strings(basis, coords);
        } catch (const Error& e) {
            throw ConfigError(std::string("bad '") + key + "': " + e.what());
        }
    };

    HamelSpecFile out{spec, endpoint("start", "0"), endpoint("end", "2"), doc["name"].value_or(std::string("spec"))};
    if (!(out.start.precise_value() < out.end.precise_value()))
        throw ConfigError("hamel spec needs start < end");
    return out;
}

HamelSpecFile load_hamel_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open hamel spec '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_hamel_spec(text.str());
}

HamelSpecFile default_hamel_spec()
{
    const AdditiveSpec spec = AdditiveSpec::standard();
    return HamelSpecFile{spec, TimeVector::zero(spec.basis), TimeVector::unit(spec.basis, 0) * Rational(2), "default"};
}

} // namespace evofam::hamel
