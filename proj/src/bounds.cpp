#include "evofam/bounds.hpp"

#include "evofam/errors.hpp"
#include "evofam/format.hpp"

#include <algorithm>
#include <cmath>

namespace evofam {

namespace {

void require_unit_interval(double x, const char* what)
{
    if (!(x >= 0.0 && x < 1.0))
        throw DomainError(std::string(what) + " = " + format_real(x) + " is outside [0, 1)");
}

} // namespace

DiskRegion::DiskRegion(double r) : r_(r)
{
    if (!(r > 0.0 && r <= 1.0))
        throw DomainError("disk radius " + format_real(r) + " is outside (0, 1]");
}

double schwarz_pick_upper(double z_abs, double w0_abs)
{
    require_unit_interval(z_abs, "|z|");
    require_unit_interval(w0_abs, "|w(0)|");
    return (z_abs + w0_abs) / (1.0 + w0_abs * z_abs);
}

double center_bound(double z_abs, double wz_abs)
{
    require_unit_interval(z_abs, "|z|");
    require_unit_interval(wz_abs, "|w(z)|");
    return (z_abs + wz_abs) / (1.0 + z_abs * wz_abs);
}

double fixed_origin_growth(double z_abs, double lambda_abs)
{
    require_unit_interval(z_abs, "|z|");
    if (!(lambda_abs >= 0.0 && lambda_abs <= 1.0))
        throw DomainError("|lambda| = " + format_real(lambda_abs) + " is outside [0, 1]");
    return z_abs * (z_abs + lambda_abs) / (1.0 + lambda_abs * z_abs);
}

double identity_deviation(double z_abs, Complex lambda)
{
    require_unit_interval(z_abs, "|z|");
    const double lam = std::abs(lambda);
    if (!(lam <= 1.0))
        throw DomainError("|lambda| = " + format_real(lam) + " exceeds 1");
    if (!(lam * z_abs < 1.0))
        throw DomainError("|lambda||z| must stay below 1");
    return z_abs * (1.0 + z_abs) * std::abs(1.0 - lambda) / (1.0 - lam * z_abs);
}

double landau_radius(double sigma)
{
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw DomainError("sigma = " + format_real(sigma) + " is outside (0, 1]");
    const double radicand = std::max(0.0, 1.0 - sigma * sigma);
    return sigma / (1.0 + std::sqrt(radicand));
}

double landau_sigma_for_radius(double r)
{
    if (!(r > 0.0 && r <= 1.0))
        throw DomainError("radius " + format_real(r) + " is outside (0, 1]");
    return 2.0 * r / (1.0 + r * r);
}

double lipschitz_bound(Complex z0, Complex z1, double r)
{
    if (!(r >= 0.0 && r < 1.0))
        throw DomainError("radius " + format_real(r) + " is outside [0, 1)");
    if (std::abs(z0) > r || std::abs(z1) > r)
        throw DomainError("points must lie in the closed disk of radius " + format_real(r));
    return 2.0 * std::abs(z1 - z0) / (1.0 - r * r);
}

double hyperbolic_sum(double e1, double e2)
{
    require_unit_interval(e1, "e1");
    require_unit_interval(e2, "e2");
    return (e1 + e2) / (1.0 + e1 * e2);
}

void BoundLedger::validate() const
{
    for (double v : {growth, deviation, lipschitz})
        if (!(std::isfinite(v) && v >= 0.0))
            throw DomainError("bound ledger entry " + format_real(v) + " is not a finite nonnegative number");
    if (!(landau_radius > 0.0 && landau_radius <= 1.0))
        throw DomainError("landau radius " + format_real(landau_radius) + " is outside (0, 1]");
}

BoundLedger bound_ledger(const DiskMap& map, Complex z, Complex z1, double r)
{
    const Complex lambda = map.deriv(0.0);
    const double sigma = std::min(1.0, std::abs(lambda));
    if (sigma == 0.0)
        throw DomainError("map'(0) vanishes; no Landau radius");
    BoundLedger ledger;
    ledger.growth = fixed_origin_growth(std::abs(z), sigma);
    ledger.deviation = identity_deviation(std::abs(z), lambda);
    ledger.lipschitz = lipschitz_bound(z, z1, r);
    ledger.landau_radius = landau_radius(sigma);
    ledger.validate();
    return ledger;
}

} // namespace evofam
