#pragma once

// Sharp pointwise estimates for holomorphic self-maps of the unit disk.
//
// Every function here takes magnitudes (or the single complex multiplier it
// needs) rather than maps, so the constants can be tested in isolation and
// paired with DiskMap::eval by the audit code.

#include "evofam/diskmap.hpp"

namespace evofam {

/// The open subdisk {|z| < r}, 0 < r <= 1.
class DiskRegion {
public:
    explicit DiskRegion(double r);
    double radius() const { return r_; }
    bool contains(Complex z) const { return std::abs(z) < r_; }

private:
    double r_;
};

/// Upper bound for |w(z)| given |z| and |w(0)|: (|z| + |w(0)|) / (1 + |w(0)||z|).
double schwarz_pick_upper(double z_abs, double w0_abs);

/// Upper bound for |w(0)| given |z| and |w(z)|. Same closed form as schwarz_pick_upper.
double center_bound(double z_abs, double wz_abs);

/// Growth bound for an origin-fixing map with |w'(0)| = lambda_abs:
/// |z| (|z| + |lambda|) / (1 + |lambda||z|).
double fixed_origin_growth(double z_abs, double lambda_abs);

/// Distance to the identity for an origin-fixing map with w'(0) = lambda:
/// |z| (1 + |z|) |1 - lambda| / (1 - |lambda||z|).
double identity_deviation(double z_abs, Complex lambda);

/// Landau radius sigma / (1 + sqrt(1 - sigma^2)). An origin-fixing self-map
/// with |w'(0)| >= sigma is univalent on the disk of this radius.
double landau_radius(double sigma);

/// Inverse of landau_radius on (0, 1]: the sigma with landau_radius(sigma) = r,
/// which is 2r / (1 + r^2).
double landau_sigma_for_radius(double r);

/// |w(z1) - w(z0)| <= 2 |z1 - z0| / (1 - r^2) for |z0|, |z1| <= r < 1.
double lipschitz_bound(Complex z0, Complex z1, double r);

/// (e1 + e2) / (1 + e1 e2). Commutative, associative, monotone, and stays below 1.
double hyperbolic_sum(double e1, double e2);

/// Named scalar bounds evaluated for one origin-fixing map at one point.
struct BoundLedger {
    double growth = 0.0;
    double deviation = 0.0;
    double lipschitz = 0.0;
    double landau_radius = 1.0;

    /// Throws DomainError if a bound is negative or non-finite, or if
    /// landau_radius leaves (0, 1].
    void validate() const;
};

/// Ledger for an origin-fixing `map`: growth and deviation at z, lipschitz for
/// the pair (z, z1) on the closed disk of radius r, landau_radius from
/// |map'(0)|. Throws DomainError when map'(0) vanishes.
BoundLedger bound_ledger(const DiskMap& map, Complex z, Complex z1, double r);

} // namespace evofam
