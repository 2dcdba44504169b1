#pragma once

#include "evofam/diskmap.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace evofam {

/// Compact time interval [a, b] with a < b.
struct Interval {
    double a;
    double b;

    double length() const { return b - a; }
    bool contains(double t) const { return a <= t && t <= b; }
};

/// Throws DomainError unless a < b and both are finite.
Interval make_interval(double a, double b);

/// Whether transition maps come from closed forms or from an iterative solver.
/// Diagnostics use it to pick default tolerances.
enum class Exactness { closed_form, iterative };

Exactness combine(Exactness x, Exactness y);

/// Two-parameter family (s, t) -> w_{s,t} of self-maps of the disk on
/// a <= s <= t <= b. Transitions are materialized lazily per query.
///
/// Besides at(), the class exposes the time-domain hooks the diagnostics
/// templates need (grid, near, precedes, real), so generic scans treat it the
/// same way as lattice-valued families.
class EvolutionFamily {
public:
    using time_type = double;
    using Transition = std::function<DiskMap(double s, double t)>;

    EvolutionFamily(Interval interval, Transition transition, std::string label,
                    Exactness exactness = Exactness::closed_form);

    const Interval& interval() const { return state_->interval; }
    const std::string& label() const { return state_->label; }
    Exactness exactness() const { return state_->exactness; }

    /// w_{s,t}. Throws DomainError unless a <= s <= t <= b.
    DiskMap at(double s, double t) const;

    double start() const { return state_->interval.a; }
    double end() const { return state_->interval.b; }
    double real(double t) const { return t; }
    bool precedes(double s, double t) const { return s <= t; }
    /// n >= 2 equispaced times, first a and last exactly b.
    std::vector<double> grid(std::size_t n) const;
    /// {t - d, t - d/2, t + d/2, t + d} restricted to [a, b].
    std::vector<double> near(double t, double delta) const;
    std::string format_time(double t) const;

private:
    struct State {
        Interval interval;
        Transition transition;
        std::string label;
        Exactness exactness;
    };
    std::shared_ptr<const State> state_;
};

/// Curve t -> c(t) inside the disk.
class Trajectory {
public:
    using Curve = std::function<Complex(double)>;

    Trajectory(Interval interval, Curve curve, std::string label);

    /// c(t). Throws DomainError if t is outside the interval or |c(t)| >= 1.
    Complex operator()(double t) const;
    const Interval& interval() const { return interval_; }
    const std::string& label() const { return label_; }

private:
    Interval interval_;
    Curve curve_;
    std::string label_;
};

/// Family with the opposite composition order: f_{s,u} o f_{u,t} = f_{s,t}.
/// Obtained from an evolution family by time reversal, f_{s,t} = w_{-t,-s}.
class ReverseFamily {
public:
    explicit ReverseFamily(EvolutionFamily forward);

    /// [-b, -a] for a forward family on [a, b].
    const Interval& interval() const { return interval_; }
    std::string label() const;

    /// f_{s,t} = w_{-t,-s}. Throws DomainError unless s <= t inside the interval.
    DiskMap at(double s, double t) const;

    const EvolutionFamily& forward() const { return forward_; }
    std::vector<double> grid(std::size_t n) const;

private:
    EvolutionFamily forward_;
    Interval interval_;
};

/// w_{s,t}(z) = e^{-(t-s)} z.
EvolutionFamily make_radial(double a, double b);

/// w_{s,t}(z) = e^{i (phase(t) - phase(s))} z.
EvolutionFamily make_rotation(double a, double b, std::function<double(double)> phase,
                              std::string phase_label = "custom");

/// w_{s,t}(z) = e^{-(t-s)^2} z. Satisfies EF1 and EF2 but violates the
/// semigroup law; used to exercise residual detection.
EvolutionFamily make_corrupted_demo(double a, double b);

/// f1 on [a,b], f2 on [b,c], and f2(b,t) o f1(s,b) on straddling pairs.
/// Throws IntervalMismatch unless f1 ends where f2 starts.
EvolutionFamily glue(const EvolutionFamily& f1, const EvolutionFamily& f2);

/// sigma_{-c(t)} o w_{s,t} o sigma_{c(s)} for a trajectory over the same
/// interval. The result is an evolution family whenever the input is one.
EvolutionFamily conjugate(const EvolutionFamily& family, const Trajectory& c);

/// Conjugates by c(t) = w_{a,t}(z0) so that every transition fixes 0.
/// Throws DomainError if |z0| >= 1.
std::pair<EvolutionFamily, Trajectory> conjugate_to_fix_origin(const EvolutionFamily& family, Complex z0);

ReverseFamily reverse_dual(const EvolutionFamily& family);
/// The inverse construction: w_{s,t} = f_{-t,-s}.
EvolutionFamily reverse_dual(const ReverseFamily& family);

} // namespace evofam
