#pragma once

// Randomized audit of the pointwise self-map estimates in bounds.hpp.
//
// Maps are random expression trees over the primitive grammar; every bound is
// a theorem, so a violation beyond the slack points at an implementation bug
// (or at a map that is not a self-map of the disk).

#include "evofam/diskmap.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace evofam {

/// z * (z + a) / (1 + conj(a) z): a degree-two Blaschke product, |a| < 1.
DiskMap blaschke2(Complex a);

/// Random composition tree of depth <= max_depth. Leaves are identity,
/// rotations, scalings with |lambda| <= 1, Mobius maps with |lambda| < 0.95 and
/// degree-two Blaschke products with |a| < 0.95.
DiskMap random_map(std::mt19937_64& rng, int max_depth = 6);

struct BoundAuditOptions {
    std::size_t trials = 1000;
    std::size_t points = 64;
    double point_radius = 0.95;
    double lipschitz_radius = 0.7;
    std::size_t landau_pairs = 32;
    double slack = 1e-12;
    int max_depth = 6;
    std::uint64_t seed = 0;
    /// Post-compose every map with Custom(k z). k > 1 breaks the self-map
    /// property on purpose, to show the audit can fail.
    std::optional<double> custom_scale;

    /// Throws DomainError on out-of-range settings.
    void validate() const;
};

struct BoundViolation {
    std::string bound;
    std::string map;
    Complex z;
    std::optional<Complex> z1;
    double lhs;
    double rhs;
    std::string note;
};

struct BoundAuditReport {
    std::size_t trials = 0;
    std::map<std::string, std::size_t> checks;  // bound name -> evaluations
    std::size_t violation_count = 0;
    /// maps with |f(0)| >= 0.95, audited without the origin-fixing and Landau checks
    std::size_t origin_fixing_skipped = 0;
    std::vector<BoundViolation> violations;  // first `kept` of them
    static constexpr std::size_t kept = 20;

    bool passed() const { return violation_count == 0; }
};

/// Names used in BoundAuditReport::checks and BoundViolation::bound.
namespace bound_names {
inline constexpr const char* schwarz_pick = "schwarz_pick_upper";
inline constexpr const char* center = "center_bound";
inline constexpr const char* growth = "fixed_origin_growth";
inline constexpr const char* deviation = "identity_deviation";
inline constexpr const char* lipschitz = "lipschitz_bound";
inline constexpr const char* landau = "landau_univalence";
inline constexpr const char* domain = "domain";
} // namespace bound_names

BoundAuditReport run_bound_audit(const BoundAuditOptions& options);

} // namespace evofam
