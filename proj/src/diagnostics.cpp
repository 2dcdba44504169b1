#include "evofam/diagnostics.hpp"

#include "evofam/format.hpp"

#include <algorithm>
#include <cmath>

namespace evofam {

void GridSpec::validate() const
{
    if (n_time < 2)
        throw DomainError("grid needs n_time >= 2");
    if (radii.empty())
        throw DomainError("grid needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0 && radii[i] < 1.0))
            throw DomainError("grid radius " + format_real(radii[i]) + " is outside (0, 1)");
        if (i > 0 && !(radii[i - 1] < radii[i]))
            throw DomainError("grid radii must be strictly increasing");
    }
    if (n_angles < 8)
        throw DomainError("grid needs n_angles >= 8");
    if (n_disk_samples < 1)
        throw DomainError("grid needs at least one disk sample");
}

std::vector<double> ModulusSchedule::deltas(double length) const
{
    if (!(first_fraction > 0.0 && length > 0.0))
        throw DomainError("modulus schedule needs a positive first gap");
    std::vector<double> out;
    double delta = first_fraction * length;
    for (std::size_t k = 0; k <= halvings; ++k, delta *= 0.5)
        out.push_back(delta);
    return out;
}

double lu_distance(const DiskMap& f, const DiskMap& g, DiskRegion r, int n_angles)
{
    if (!(r.radius() < 1.0))
        throw DomainError("locally uniform distance needs a radius below 1");
    if (n_angles < 1)
        throw DomainError("need at least one angle");
    double worst = 0.0;
    for (const Complex z : circle_samples(r.radius(), n_angles))
        detail::raise_max(worst, std::abs(f.eval(z) - g.eval(z)));
    return worst;
}

std::vector<double> ContinuityModulus::at_radius(std::size_t j) const
{
    if (j >= radii.size())
        throw DomainError("radius index out of range");
    std::vector<double> out;
    out.reserve(moduli.size());
    for (const auto& row : moduli)
        out.push_back(row[j]);
    return out;
}

std::vector<double> ContinuityModulus::at_radius_value(double r) const
{
    for (std::size_t j = 0; j < radii.size(); ++j)
        if (radii[j] == r)
            return at_radius(j);
    throw DomainError("radius " + format_real(r) + " was not scanned");
}

bool decays(const std::vector<double>& sequence, double ratio, double floor)
{
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
        if (std::isnan(sequence[k]) || std::isnan(sequence[k + 1]))
            return false;
        if (sequence[k] <= floor)
            continue;
        if (!(sequence[k + 1] <= ratio * sequence[k]))
            return false;
    }
    return true;
}

double worst_decay_ratio(const std::vector<double>& sequence, double floor)
{
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
        if (sequence[k] > floor)
            detail::raise_max(worst, sequence[k + 1] / sequence[k]);
    return worst;
}

namespace detail {

std::vector<std::vector<Complex>> circles(const GridSpec& grid)
{
    std::vector<std::vector<Complex>> out;
    out.reserve(grid.radii.size());
    for (const double r : grid.radii)
        out.push_back(circle_samples(r, grid.n_angles));
    return out;
}

void raise_circle_distance(const DiskMap& f, const DiskMap& g, const std::vector<std::vector<Complex>>& circles,
                           std::vector<double>& acc, std::size_t offset)
{
    for (std::size_t j = 0; j < circles.size(); ++j)
        for (const Complex z : circles[j])
            raise_max(acc[offset + j], std::abs(f.eval(z) - g.eval(z)));
}

} // namespace detail

UnivalenceCertificate univalence_certificate(const EvolutionFamily& family, double s0, double t0, DiskRegion r,
                                             Complex z0, const CertificateOptions& options)
{
    const Interval& iv = family.interval();
    if (!(iv.contains(s0) && iv.contains(t0)))
        throw DomainError("certificate endpoints must lie in the family interval");
    if (!(s0 < t0))
        throw DomainError("certificate needs s0 < t0; w_{t,t} is the identity");
    if (!(r.radius() < 1.0))
        throw DomainError("certificate radius must be below 1");

    const auto [conjugated, orbit] = conjugate_to_fix_origin(family, z0);
    const double a = iv.a;

    UnivalenceCertificate cert{};
    cert.s0 = s0;
    cert.t0 = t0;
    cert.radius = r.radius();
    cert.z0 = z0;
    const double sigma_min = landau_sigma_for_radius(r.radius());
    cert.sigma = 0.5 * (sigma_min + 1.0);
    cert.landau_radius = landau_radius(cert.sigma);

    auto alpha = [&](double tau) {
        const double value = std::abs(conjugated.at(a, tau).deriv(0.0));
        if (!(value >= options.alpha_floor))
            throw CertificationFailure("|alpha(" + format_real(tau) + ")| = " + format_real(value) +
                                       " vanished numerically");
        return value;
    };

    double tau = s0;
    double alpha_tau = alpha(tau);
    cert.subdivision.push_back(tau);
    while (tau < t0) {
        if (cert.steps() >= options.step_cap)
            throw CertificationFailure("subdivision exceeded " + std::to_string(options.step_cap) + " steps");
        double next = t0;
        double ratio = alpha(t0) / alpha_tau;
        if (!(ratio > cert.sigma)) {
            double lo = tau;
            double hi = t0;
            double lo_ratio = 1.0;
            for (int i = 0; i < options.bisection_iterations; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                const double mid_ratio = alpha(mid) / alpha_tau;
                if (mid_ratio > cert.sigma) {
                    lo = mid;
                    lo_ratio = mid_ratio;
                } else {
                    hi = mid;
                }
            }
            if (!(lo > tau))
                throw CertificationFailure("derivative ratio drops below sigma immediately after t = " +
                                           format_real(tau) + "; alpha is not continuous there");
            next = lo;
            ratio = lo_ratio;
        }
        cert.subdivision.push_back(next);
        cert.ratios.push_back(ratio);
        tau = next;
        alpha_tau = alpha(tau);
    }
    return cert;
}

DiskMap certified_map(const EvolutionFamily& family, const UnivalenceCertificate& certificate)
{
    return conjugate_to_fix_origin(family, certificate.z0).first.at(certificate.s0, certificate.t0);
}

namespace {

constexpr double kCollisionTol = 1e-10;
constexpr double kSeparationTol = 1e-6;

// Newton search for f(w) = target starting from seed, confined to |w| < r.
std::optional<Complex> second_preimage(const DiskMap& f, Complex target, Complex seed, double r)
{
    Complex w = seed;
    for (int it = 0; it < 40; ++it) {
        const Jet j = f.jet(w);
        const Complex residual = j.value - target;
        if (std::abs(residual) < 1e-13)
            return w;
        if (j.derivative == Complex(0.0))
            return std::nullopt;
        Complex step = residual / j.derivative;
        double damping = 1.0;
        while (std::abs(w - damping * step) >= r && damping > 1e-6)
            damping *= 0.5;
        if (std::abs(w - damping * step) >= r)
            return std::nullopt;
        w -= damping * step;
    }
    if (std::abs(f.eval(w) - target) < kCollisionTol)
        return w;
    return std::nullopt;
}

} // namespace

UnivalenceSample univalence_sample_test(const DiskMap& map, DiskRegion r, std::size_t n, std::uint64_t seed)
{
    if (!(r.radius() < 1.0))
        throw DomainError("sample test radius must be below 1");
    const auto points = disk_samples(2 * n, r.radius(), seed);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex z1 = points[2 * k];
        const Complex target = map.eval(z1);
        for (const Complex partner : {-z1, points[2 * k + 1], std::conj(z1)}) {
            if (!r.contains(partner))
                continue;
            std::optional<Complex> candidate = partner;
            if (!(std::abs(map.eval(partner) - target) < kCollisionTol))
                candidate = second_preimage(map, target, partner, r.radius());
            if (!candidate)
                continue;
            const double gap = std::abs(map.eval(*candidate) - target);
            if (gap < kCollisionTol && std::abs(*candidate - z1) > kSeparationTol)
                return {false, std::make_pair(z1, *candidate), gap};
        }
    }
    return {true, std::nullopt, 0.0};
}

double reverse_identity_residual(const ReverseFamily& family, const GridSpec& grid)
{
    grid.validate();
    const DiskMap id = DiskMap::identity();
    double worst = 0.0;
    for (const double t : family.grid(grid.n_time))
        detail::raise_max(worst, lu_distance(family.at(t, t), id, DiskRegion(grid.outer_radius()), grid.n_angles));
    return worst;
}

double reverse_composition_residual(const ReverseFamily& family, const GridSpec& grid)
{
    grid.validate();
    const auto times = family.grid(grid.n_time);
    const auto points = disk_samples(grid.n_disk_samples, grid.outer_radius(), grid.seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
        for (std::size_t j = i; j < times.size(); ++j)
            for (std::size_t k = j; k < times.size(); ++k) {
                const DiskMap left = family.at(times[i], times[j]);
                const DiskMap right = family.at(times[j], times[k]);
                const DiskMap direct = family.at(times[i], times[k]);
                for (const Complex z : points)
                    detail::raise_max(worst, std::abs(left.eval(right.eval(z)) - direct.eval(z)));
            }
    return worst;
}

} // namespace evofam
