#include "evofam/diskmap.hpp"

#include "evofam/errors.hpp"
#include "evofam/format.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

namespace evofam {

namespace {

// Slack for |lambda| <= 1 on unimodular parameters built as e^{i theta}.
constexpr double kUnitSlack = 4 * std::numeric_limits<double>::epsilon();

struct IdentityNode {};
struct RotationNode {
    double theta;
    Complex factor;
};
struct ScaleNode {
    Complex lambda;
};
struct MobiusNode {
    Complex lambda;
};
struct ComposeNode {
    DiskMap outer;
    DiskMap inner;
};
struct CustomNode {
    std::string signature;
    DiskMap::CustomFn fn;
    double bound;
};

} // namespace

struct DiskMap::Node {
    std::variant<IdentityNode, RotationNode, ScaleNode, MobiusNode, ComposeNode, CustomNode> v;
    std::size_t leaves = 1;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_inside(Complex z)
{
    if (!(std::norm(z) < 1.0))
        throw DomainError("point " + format_complex(z) + " is not inside the unit disk");
}

} // namespace

DiskMap::DiskMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

DiskMap::DiskMap() : DiskMap(identity()) {}

DiskMap DiskMap::identity()
{
    static const auto shared = std::make_shared<const Node>(Node{IdentityNode{}});
    return DiskMap(shared);
}

DiskMap DiskMap::rotation(double theta)
{
    if (!std::isfinite(theta))
        throw DomainError("rotation angle must be finite");
    return DiskMap(std::make_shared<const Node>(Node{RotationNode{theta, std::polar(1.0, theta)}}));
}

DiskMap DiskMap::scale(Complex lambda)
{
    if (!(std::abs(lambda) <= 1.0 + kUnitSlack))
        throw DomainError("scale factor " + format_complex(lambda) + " has modulus above 1");
    return DiskMap(std::make_shared<const Node>(Node{ScaleNode{lambda}}));
}

DiskMap DiskMap::mobius(Complex lambda)
{
    if (!(std::norm(lambda) < 1.0))
        throw DomainError("mobius parameter " + format_complex(lambda) + " must lie inside the unit disk");
    return DiskMap(std::make_shared<const Node>(Node{MobiusNode{lambda}}));
}

DiskMap DiskMap::compose(DiskMap outer, DiskMap inner)
{
    if (outer.kind() == Kind::identity)
        return inner;
    if (inner.kind() == Kind::identity)
        return outer;
    const std::size_t leaves = outer.size() + inner.size();
    return DiskMap(std::make_shared<const Node>(Node{ComposeNode{std::move(outer), std::move(inner)}, leaves}));
}

DiskMap DiskMap::custom(std::string signature, CustomFn fn, double declared_bound)
{
    if (!fn)
        throw DomainError("custom map needs a callback");
    if (!(declared_bound > 0.0 && declared_bound <= 1.0))
        throw DomainError("custom map must declare a sup bound in (0, 1]");
    return DiskMap(std::make_shared<const Node>(Node{CustomNode{std::move(signature), std::move(fn), declared_bound}}));
}

Jet DiskMap::jet_unchecked(Complex z) const
{
    return std::visit(
        overloaded{
            [&](const IdentityNode&) { return Jet{z, 1.0}; },
            [&](const RotationNode& r) { return Jet{r.factor * z, r.factor}; },
            [&](const ScaleNode& s) { return Jet{s.lambda * z, s.lambda}; },
            [&](const MobiusNode& m) {
                const Complex den = 1.0 + std::conj(m.lambda) * z;
                return Jet{(z + m.lambda) / den, (1.0 - std::norm(m.lambda)) / (den * den)};
            },
            [&](const ComposeNode& c) {
                const Jet in = c.inner.jet_unchecked(z);
                const Jet out = c.outer.jet_unchecked(in.value);
                return Jet{out.value, out.derivative * in.derivative};
            },
            [&](const CustomNode& c) { return c.fn(z); },
        },
        node_->v);
}

Jet DiskMap::jet(Complex z) const
{
    require_inside(z);
    return jet_unchecked(z);
}

Complex DiskMap::eval(Complex z) const { return jet(z).value; }

Complex DiskMap::deriv(Complex z) const { return jet(z).derivative; }

DiskMap::Kind DiskMap::kind() const
{
    return static_cast<Kind>(node_->v.index());
}

double DiskMap::angle() const
{
    if (const auto* r = std::get_if<RotationNode>(&node_->v))
        return r->theta;
    return 0.0;
}

Complex DiskMap::parameter() const
{
    if (const auto* s = std::get_if<ScaleNode>(&node_->v))
        return s->lambda;
    if (const auto* m = std::get_if<MobiusNode>(&node_->v))
        return m->lambda;
    return 0.0;
}

const DiskMap& DiskMap::outer() const
{
    if (const auto* c = std::get_if<ComposeNode>(&node_->v))
        return c->outer;
    throw std::logic_error("outer() on a non-compose map");
}

const DiskMap& DiskMap::inner() const
{
    if (const auto* c = std::get_if<ComposeNode>(&node_->v))
        return c->inner;
    throw std::logic_error("inner() on a non-compose map");
}

double DiskMap::declared_bound() const
{
    return std::visit(
        overloaded{
            [](const ScaleNode& s) { return std::min(1.0, std::abs(s.lambda)); },
            [](const ComposeNode& c) { return std::min(c.outer.declared_bound(), 1.0); },
            [](const CustomNode& c) { return c.bound; },
            [](const auto&) { return 1.0; },
        },
        node_->v);
}

std::size_t DiskMap::size() const { return node_->leaves; }

std::string DiskMap::describe() const
{
    return std::visit(
        overloaded{
            [](const IdentityNode&) { return std::string("id"); },
            [](const RotationNode& r) { return "rot(" + format_real(r.theta) + ")"; },
            [](const ScaleNode& s) { return "scale(" + format_complex(s.lambda) + ")"; },
            [](const MobiusNode& m) { return "mobius(" + format_complex(m.lambda) + ")"; },
            [](const ComposeNode& c) { return c.outer.describe() + " o " + c.inner.describe(); },
            [](const CustomNode& c) { return "custom[" + c.signature + "]"; },
        },
        node_->v);
}

bool structurally_equal(const DiskMap& a, const DiskMap& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.node_->v.index() != b.node_->v.index())
        return false;
    return std::visit(
        overloaded{
            [](const IdentityNode&, const IdentityNode&) { return true; },
            [](const RotationNode& x, const RotationNode& y) { return x.theta == y.theta; },
            [](const ScaleNode& x, const ScaleNode& y) { return x.lambda == y.lambda; },
            [](const MobiusNode& x, const MobiusNode& y) { return x.lambda == y.lambda; },
            [](const ComposeNode& x, const ComposeNode& y) {
                return structurally_equal(x.outer, y.outer) && structurally_equal(x.inner, y.inner);
            },
            [](const CustomNode& x, const CustomNode& y) { return x.signature == y.signature && x.bound == y.bound; },
            [](const auto&, const auto&) { return false; },
        },
        a.node_->v, b.node_->v);
}

} // namespace evofam
