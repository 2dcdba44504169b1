#include "evofam/audit.hpp"

#include "evofam/bounds.hpp"
#include "evofam/diagnostics.hpp"
#include "evofam/errors.hpp"
#include "evofam/format.hpp"
#include "evofam/sampling.hpp"

#include <cmath>
#include <numbers>

namespace evofam {

DiskMap blaschke2(Complex a)
{
    if (!(std::abs(a) < 1.0))
        throw DomainError("Blaschke zero must lie inside the disk");
    return DiskMap::custom(
        "blaschke2(" + format_complex(a) + ")",
        [a](Complex z) {
            const Complex den = 1.0 + std::conj(a) * z;
            const Complex m = (z + a) / den;
            const Complex dm = (1.0 - std::norm(a)) / (den * den);
            return Jet{z * m, m + z * dm};
        },
        1.0);
}

namespace {

Complex random_point(std::mt19937_64& rng, double radius)
{
    const double r = radius * std::sqrt(uniform01(rng));
    return std::polar(r, 2.0 * std::numbers::pi * uniform01(rng));
}

DiskMap random_leaf(std::mt19937_64& rng)
{
    switch (rng() % 5) {
    case 0:
        return DiskMap::identity();
    case 1:
        return DiskMap::rotation(uniform(rng, -std::numbers::pi, std::numbers::pi));
    case 2:
        return DiskMap::scale(random_point(rng, 1.0));
    case 3:
        return DiskMap::mobius(random_point(rng, 0.95));
    default:
        return blaschke2(random_point(rng, 0.95));
    }
}

} // namespace

DiskMap random_map(std::mt19937_64& rng, int max_depth)
{
    if (max_depth <= 0 || rng() % 3 == 0)
        return random_leaf(rng);
    DiskMap outer = random_map(rng, max_depth - 1);
    DiskMap inner = random_map(rng, max_depth - 1);
    return DiskMap::compose(std::move(outer), std::move(inner));
}

void BoundAuditOptions::validate() const
{
    if (!(point_radius > 0.0 && point_radius < 1.0))
        throw DomainError("audit point radius must lie in (0, 1)");
    if (!(lipschitz_radius > 0.0 && lipschitz_radius < 1.0))
        throw DomainError("audit Lipschitz radius must lie in (0, 1)");
    if (!(slack >= 0.0))
        throw DomainError("audit slack must be non-negative");
    if (max_depth < 0)
        throw DomainError("audit depth must be non-negative");
    if (custom_scale && !(std::isfinite(*custom_scale) && *custom_scale > 0.0))
        throw DomainError("custom scale must be positive");
}

namespace {

constexpr double kMaxNormalizer = 0.95;

class Auditor {
public:
    Auditor(const BoundAuditOptions& options, BoundAuditReport& report) : opt_(options), report_(report) {}

    void check(const char* bound, const DiskMap& map, Complex z, std::optional<Complex> z1, double lhs, double rhs)
    {
        ++report_.checks[bound];
        if (lhs <= rhs + opt_.slack)
            return;
        record({bound, map.describe(), z, z1, lhs, rhs, {}});
    }

    void record(BoundViolation v)
    {
        ++report_.violation_count;
        if (report_.violations.size() < BoundAuditReport::kept)
            report_.violations.push_back(std::move(v));
    }

    void audit(const DiskMap& f, std::uint64_t trial_seed)
    {
        namespace bn = bound_names;
        try {
            const Complex w0 = f.eval(0.0);
            // origin-fixing normalization g = sigma_{-f(0)} o f. Beyond the Mobius
            // leaf range the normalizer amplifies rounding in f by 1/(1-|f(0)|^2),
            // past the audit slack, so those maps get the unnormalized checks only.
            const bool normalizable = std::abs(w0) < kMaxNormalizer;
            if (!normalizable)
                ++report_.origin_fixing_skipped;
            const DiskMap g = DiskMap::compose(DiskMap::mobius(normalizable ? -w0 : Complex(0.0)), f);
            Complex lambda = g.deriv(0.0);
            if (std::abs(lambda) > 1.0)
                lambda /= std::abs(lambda);

            for (const Complex z : disk_samples(opt_.points, opt_.point_radius, trial_seed)) {
                const Complex fz = f.eval(z);
                const double za = std::abs(z);
                check(bn::schwarz_pick, f, z, {}, std::abs(fz), schwarz_pick_upper(za, std::abs(w0)));
                if (std::abs(fz) < 1.0)
                    check(bn::center, f, z, {}, std::abs(w0), center_bound(za, std::abs(fz)));
                else
                    record({bn::center, f.describe(), z, {}, std::abs(fz), 1.0, "f(z) left the disk"});
                if (!normalizable)
                    continue;
                const Complex gz = g.eval(z);
                check(bn::growth, g, z, {}, std::abs(gz), fixed_origin_growth(za, std::abs(lambda)));
                check(bn::deviation, g, z, {}, std::abs(gz - z), identity_deviation(za, lambda));
            }

            const auto pts = disk_samples(opt_.points + 1, opt_.lipschitz_radius, trial_seed ^ 0x9e3779b97f4a7c15ULL);
            for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
                const double r = std::max(std::abs(pts[k]), std::abs(pts[k + 1]));
                check(bn::lipschitz, f, pts[k], pts[k + 1], std::abs(f.eval(pts[k + 1]) - f.eval(pts[k])),
                      lipschitz_bound(pts[k], pts[k + 1], r));
            }

            const double sigma = std::min(std::abs(lambda), 1.0);
            if (normalizable && opt_.landau_pairs > 0 && sigma > 1e-8) {
                const double rho = std::min(landau_radius(sigma), opt_.point_radius);
                ++report_.checks[bn::landau];
                // injectivity is scale invariant; normalizing g'(0) to 1 keeps the
                // sample test's absolute collision tolerance meaningful
                const DiskMap normalized = DiskMap::custom("normalized", [g, lambda](Complex z) {
                    const Jet j = g.jet(z);
                    return Jet{j.value / lambda, j.derivative / lambda};
                });
                const UnivalenceSample sample =
                    univalence_sample_test(normalized, DiskRegion(rho), opt_.landau_pairs, trial_seed);
                if (!sample.passed)
                    record({bn::landau, g.describe(), sample.witness->first, sample.witness->second,
                            std::abs(sample.witness->first - sample.witness->second), 0.0,
                            "two points of the Landau disk share an image"});
            }
        } catch (const DomainError& e) {
            record({bn::domain, f.describe(), 0.0, {}, 1.0, 1.0, e.what()});
        }
    }

private:
    const BoundAuditOptions& opt_;
    BoundAuditReport& report_;
};

} // namespace

BoundAuditReport run_bound_audit(const BoundAuditOptions& options)
{
    options.validate();
    BoundAuditReport report;
    Auditor auditor(options, report);
    std::mt19937_64 rng(options.seed);
    std::optional<DiskMap> widen;
    if (options.custom_scale) {
        const double k = *options.custom_scale;
        widen = DiskMap::custom("widened(" + format_real(k) + ")", [k](Complex z) { return Jet{k * z, k}; },
                                std::min(1.0, k));
    }
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        DiskMap f = random_map(rng, options.max_depth);
        if (widen)
            f = DiskMap::compose(*widen, f);
        auditor.audit(f, options.seed * 0x100000001b3ULL + trial);
        ++report.trials;
    }
    return report;
}

} // namespace evofam
