#include "evofam/evolution.hpp"

#include "evofam/errors.hpp"
#include "evofam/format.hpp"

#include <cmath>

namespace evofam {

Interval make_interval(double a, double b)
{
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("interval endpoints must be finite");
    if (!(a < b))
        throw DomainError("interval [" + format_real(a) + ", " + format_real(b) + "] is empty or reversed");
    return Interval{a, b};
}

Exactness combine(Exactness x, Exactness y)
{
    return x == Exactness::iterative || y == Exactness::iterative ? Exactness::iterative : Exactness::closed_form;
}

EvolutionFamily::EvolutionFamily(Interval interval, Transition transition, std::string label, Exactness exactness)
{
    interval = make_interval(interval.a, interval.b);
    if (!transition)
        throw DomainError("evolution family needs a transition rule");
    state_ = std::make_shared<const State>(State{interval, std::move(transition), std::move(label), exactness});
}

DiskMap EvolutionFamily::at(double s, double t) const
{
    const Interval& iv = state_->interval;
    if (!(iv.a <= s && s <= t && t <= iv.b))
        throw DomainError(label() + ": (s, t) = (" + format_real(s) + ", " + format_real(t) +
                          ") violates a <= s <= t <= b on [" + format_real(iv.a) + ", " + format_real(iv.b) + "]");
    return state_->transition(s, t);
}

std::vector<double> EvolutionFamily::grid(std::size_t n) const
{
    if (n < 2)
        throw DomainError("time grid needs at least two points");
    const Interval& iv = state_->interval;
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = iv.a + iv.length() * static_cast<double>(k) / static_cast<double>(n - 1);
    out.back() = iv.b;
    return out;
}

std::vector<double> EvolutionFamily::near(double t, double delta) const
{
    std::vector<double> out;
    for (double offset : {-delta, -0.5 * delta, 0.5 * delta, delta}) {
        const double p = t + offset;
        if (state_->interval.contains(p))
            out.push_back(p);
    }
    return out;
}

std::string EvolutionFamily::format_time(double t) const { return format_real(t); }

Trajectory::Trajectory(Interval interval, Curve curve, std::string label)
    : interval_(make_interval(interval.a, interval.b)), curve_(std::move(curve)), label_(std::move(label))
{
    if (!curve_)
        throw DomainError("trajectory needs a curve");
}

Complex Trajectory::operator()(double t) const
{
    if (!interval_.contains(t))
        throw DomainError("trajectory " + label_ + " queried outside its interval at t = " + format_real(t));
    const Complex c = curve_(t);
    if (!(std::norm(c) < 1.0))
        throw DomainError("trajectory " + label_ + " leaves the disk at t = " + format_real(t));
    return c;
}

ReverseFamily::ReverseFamily(EvolutionFamily forward)
    : forward_(std::move(forward)), interval_{-forward_.interval().b, -forward_.interval().a}
{
}

std::string ReverseFamily::label() const { return "reverse:" + forward_.label(); }

DiskMap ReverseFamily::at(double s, double t) const
{
    if (!(interval_.a <= s && s <= t && t <= interval_.b))
        throw DomainError(label() + ": (s, t) = (" + format_real(s) + ", " + format_real(t) + ") is not admissible");
    return forward_.at(-t, -s);
}

std::vector<double> ReverseFamily::grid(std::size_t n) const
{
    std::vector<double> out = forward_.grid(n);
    for (double& t : out)
        t = -t;
    return {out.rbegin(), out.rend()};
}

EvolutionFamily make_radial(double a, double b)
{
    return EvolutionFamily(
        make_interval(a, b), [](double s, double t) { return DiskMap::scale(std::exp(-(t - s))); }, "radial");
}

EvolutionFamily make_rotation(double a, double b, std::function<double(double)> phase, std::string phase_label)
{
    if (!phase)
        throw DomainError("rotation family needs a phase function");
    return EvolutionFamily(
        make_interval(a, b),
        [phase = std::move(phase)](double s, double t) { return DiskMap::rotation(phase(t) - phase(s)); },
        "rotation:" + phase_label);
}

EvolutionFamily make_corrupted_demo(double a, double b)
{
    return EvolutionFamily(
        make_interval(a, b),
        [](double s, double t) { return DiskMap::scale(std::exp(-(t - s) * (t - s))); }, "corrupted-demo");
}

EvolutionFamily glue(const EvolutionFamily& f1, const EvolutionFamily& f2)
{
    if (f1.interval().b != f2.interval().a)
        throw IntervalMismatch("cannot glue [" + format_real(f1.interval().a) + ", " + format_real(f1.interval().b) +
                               "] to [" + format_real(f2.interval().a) + ", " + format_real(f2.interval().b) + "]");
    const double seam = f1.interval().b;
    return EvolutionFamily(
        Interval{f1.interval().a, f2.interval().b},
        [f1, f2, seam](double s, double t) {
            if (t <= seam)
                return f1.at(s, t);
            if (s >= seam)
                return f2.at(s, t);
            return compose(f2.at(seam, t), f1.at(s, seam));
        },
        "glued:" + f1.label() + "+" + f2.label(), combine(f1.exactness(), f2.exactness()));
}

EvolutionFamily conjugate(const EvolutionFamily& family, const Trajectory& c)
{
    if (c.interval().a != family.interval().a || c.interval().b != family.interval().b)
        throw IntervalMismatch("trajectory and family intervals differ");
    return EvolutionFamily(
        family.interval(),
        [family, c](double s, double t) {
            return compose(mobius(-c(t)), compose(family.at(s, t), mobius(c(s))));
        },
        "mobius-conjugated:" + family.label() + "@" + c.label(), family.exactness());
}

std::pair<EvolutionFamily, Trajectory> conjugate_to_fix_origin(const EvolutionFamily& family, Complex z0)
{
    if (!(std::norm(z0) < 1.0))
        throw DomainError("base point " + format_complex(z0) + " is not inside the unit disk");
    const double a = family.interval().a;
    Trajectory c(family.interval(), [family, z0, a](double t) { return family.at(a, t).eval(z0); },
                 "orbit(" + format_complex(z0) + ")");
    return {conjugate(family, c), c};
}

ReverseFamily reverse_dual(const EvolutionFamily& family) { return ReverseFamily(family); }

EvolutionFamily reverse_dual(const ReverseFamily& family)
{
    const Interval& iv = family.interval();
    return EvolutionFamily(
        Interval{-iv.b, -iv.a}, [family](double s, double t) { return family.at(-t, -s); },
        "reverse:" + family.label(), family.forward().exactness());
}

} // namespace evofam
