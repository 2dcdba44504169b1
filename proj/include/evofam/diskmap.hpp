#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>

namespace evofam {

using Complex = std::complex<double>;

/// Value and complex derivative of a holomorphic map at one point.
struct Jet {
    Complex value;
    Complex derivative;
};

/// Immutable holomorphic self-map of the unit disk, stored as an expression
/// tree over a small grammar of primitives. Derivatives are propagated by the
/// chain rule through the tree, never by differencing.
///
/// Copies share the underlying tree; nothing in a DiskMap is ever mutated
/// after construction, so evaluation is safe from any number of threads
/// provided Custom callbacks are themselves pure.
class DiskMap {
public:
    enum class Kind { identity, rotation, scale, mobius, compose, custom };

    using CustomFn = std::function<Jet(Complex)>;

    /// z
    static DiskMap identity();
    /// e^{i theta} z
    static DiskMap rotation(double theta);
    /// lambda z, with |lambda| <= 1. Unimodular lambda is admitted.
    static DiskMap scale(Complex lambda);
    /// (z + lambda) / (1 + conj(lambda) z), with |lambda| < 1. The inverse is mobius(-lambda).
    static DiskMap mobius(Complex lambda);
    /// outer(inner(z)). Identity operands are dropped.
    static DiskMap compose(DiskMap outer, DiskMap inner);
    /// User-supplied map. The caller declares sup|f| <= declared_bound <= 1 on the disk;
    /// the library trusts the declaration and the audit suites sample it.
    /// `signature` identifies the map in structural comparisons and in describe().
    static DiskMap custom(std::string signature, CustomFn fn, double declared_bound = 1.0);

    DiskMap();  // identity

    /// map(z). Throws DomainError unless |z| < 1.
    Complex eval(Complex z) const;
    /// map'(z). Throws DomainError unless |z| < 1.
    Complex deriv(Complex z) const;
    /// Both at once. Throws DomainError unless |z| < 1.
    Jet jet(Complex z) const;

    Complex operator()(Complex z) const { return eval(z); }

    Kind kind() const;
    /// Rotation angle; 0 for non-rotation nodes.
    double angle() const;
    /// Scale / Mobius parameter; 0 otherwise.
    Complex parameter() const;
    /// Children of a Compose node. Throws std::logic_error on other kinds.
    const DiskMap& outer() const;
    const DiskMap& inner() const;
    /// Declared sup bound for Custom nodes, 1 for automorphisms, |lambda| for Scale.
    double declared_bound() const;

    /// Number of primitive leaves in the tree.
    std::size_t size() const;
    /// Human-readable expression with parameters at 17 significant digits.
    std::string describe() const;

    friend bool structurally_equal(const DiskMap& a, const DiskMap& b);

private:
    struct Node;
    explicit DiskMap(std::shared_ptr<const Node> node);
    Jet jet_unchecked(Complex z) const;

    std::shared_ptr<const Node> node_;
};

inline Complex eval(const DiskMap& map, Complex z) { return map.eval(z); }
inline Complex deriv(const DiskMap& map, Complex z) { return map.deriv(z); }
inline DiskMap compose(DiskMap outer, DiskMap inner)
{
    return DiskMap::compose(std::move(outer), std::move(inner));
}

/// Mobius automorphism sigma_lambda.
inline DiskMap mobius(Complex lambda) { return DiskMap::mobius(lambda); }

} // namespace evofam
