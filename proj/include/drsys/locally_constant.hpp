#ifndef DRSYS_LOCALLY_CONSTANT_HPP
#define DRSYS_LOCALLY_CONSTANT_HPP

#include <boost/rational.hpp>
#include <complex>
#include <string>
#include <vector>

#include "drsys/homeo.hpp"
#include "drsys/system.hpp"

namespace drsys {

using Rational = boost::rational<long long>;

template <typename V>
V scalar_conj(const V& v) {
    return v;
}
inline std::complex<double> scalar_conj(const std::complex<double>& v) {
    return std::conj(v);
}

// A scalar function on the boundary space, constant on each cylinder of a
// finite disjoint family and zero outside their union.
template <typename V>
class LocallyConstant {
public:
    explicit LocallyConstant(const DirectedGraph& g) : graph_(&g) {}

    static LocallyConstant zero(const DirectedGraph& g) { return LocallyConstant(g); }

    static LocallyConstant indicator(const Cylinder& c, V value = V{1}) {
        LocallyConstant f(*c.graph);
        if (!(value == V{})) f.pieces_.emplace_back(c, value);
        return f;
    }

    // Constant on the whole space (piecewise over the vertex cylinders).
    static LocallyConstant constant(const DirectedGraph& g, V value) {
        LocallyConstant f(g);
        if (value == V{}) return f;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            f.pieces_.emplace_back(Cylinder{&g, Path{v, {}}}, value);
        return f;
    }

    // f = sum of value * indicator(base) over possibly overlapping terms.
    static LocallyConstant weighted_sum(
        const DirectedGraph& g, const std::vector<std::pair<Cylinder, V>>& terms) {
        std::vector<Cylinder> bases;
        bases.reserve(terms.size());
        for (const auto& [c, v] : terms) bases.push_back(c);
        LocallyConstant f(g);
        for (const Cylinder& atom : refine_to_atoms(g, bases)) {
            V acc{};
            for (const auto& [c, v] : terms)
                if (cylinder_subset(atom, c)) acc = acc + v;
            if (!(acc == V{})) f.pieces_.emplace_back(atom, acc);
        }
        return f;
    }

    const DirectedGraph& graph() const { return *graph_; }
    const std::vector<std::pair<Cylinder, V>>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }

    V evaluate(const BoundaryPoint& x) const {
        for (const auto& [c, v] : pieces_)
            if (cylinder_contains(c, x)) return v;
        return V{};
    }

    friend LocallyConstant operator+(const LocallyConstant& a, const LocallyConstant& b) {
        return pointwise(a, b, [](const V& x, const V& y) { return x + y; });
    }
    friend LocallyConstant operator-(const LocallyConstant& a, const LocallyConstant& b) {
        return pointwise(a, b, [](const V& x, const V& y) { return x - y; });
    }
    friend LocallyConstant operator*(const LocallyConstant& a, const LocallyConstant& b) {
        return pointwise(a, b, [](const V& x, const V& y) { return x * y; });
    }
    LocallyConstant scaled(const V& s) const {
        LocallyConstant f(*graph_);
        if (s == V{}) return f;
        for (const auto& [c, v] : pieces_) f.pieces_.emplace_back(c, v * s);
        return f;
    }
    LocallyConstant conjugated() const {
        LocallyConstant f(*graph_);
        for (const auto& [c, v] : pieces_) f.pieces_.emplace_back(c, scalar_conj(v));
        return f;
    }

    friend bool operator==(const LocallyConstant& a, const LocallyConstant& b) {
        LocallyConstant d = a - b;
        return d.pieces_.empty();
    }

    // A point where the function differs from g (absent when equal).
    std::optional<BoundaryPoint> disagreement_point(const LocallyConstant& g) const {
        LocallyConstant d = *this - g;
        if (d.pieces_.empty()) return std::nullopt;
        return representative_point(d.pieces_.front().first);
    }

    // (sigma)^*(f)(x) = f(sigma(x)): each base Z(mu) is replaced by the
    // bases Z(e.mu) over edges e into the start of mu.  The result is
    // supported inside dom(sigma).
    LocallyConstant sigma_upper_star() const {
        const DirectedGraph& g = *graph_;
        LocallyConstant out(g);
        for (const auto& [c, v] : pieces_) {
            for (EdgeId e : g.in_edges(c.base.start)) {
                Path p{g.src(e), {e}};
                p.edges.insert(p.edges.end(), c.base.edges.begin(), c.base.edges.end());
                out.pieces_.emplace_back(Cylinder{&g, std::move(p)}, v);
            }
        }
        std::sort(out.pieces_.begin(), out.pieces_.end(),
                  [](const auto& a, const auto& b) { return CylinderLess{}(a.first, b.first); });
        return out;
    }

    // (sigma)_*(f)(x) = sum of f over sigma^{-1}(x); the support must lie in
    // dom(sigma) (length-zero bases at non-sinks are refined away first).
    LocallyConstant sigma_lower_star() const {
        const DirectedGraph& g = *graph_;
        std::vector<std::pair<Cylinder, V>> expanded;
        for (const auto& [c, v] : pieces_) {
            if (c.depth() >= 1) {
                expanded.emplace_back(c, v);
                continue;
            }
            if (g.is_sink(c.base.start))
                throw SupportError("support of the function meets the bare sink '" +
                                   g.vertex_name(c.base.start) + "' outside dom(sigma)");
            for (const Cylinder& part : split_cylinder(c)) expanded.emplace_back(part, v);
        }
        std::vector<std::pair<Cylinder, V>> dropped;
        for (auto& [c, v] : expanded) {
            Path p = c.base;
            EdgeId e = p.edges.front();
            p.edges.erase(p.edges.begin());
            p.start = graph_->dst(e);
            dropped.emplace_back(Cylinder{graph_, std::move(p)}, v);
        }
        return weighted_sum(g, dropped);
    }

    // Rewrites f and g over one shared partition; the rewrites are
    // pointwise equal to the inputs.
    static std::pair<LocallyConstant, LocallyConstant> refine_pair(
        const LocallyConstant& a, const LocallyConstant& b) {
        if (a.graph_ != b.graph_)
            throw Error("locally constant functions live over different graphs");
        std::vector<Cylinder> bases;
        for (const auto& [c, v] : a.pieces_) bases.push_back(c);
        for (const auto& [c, v] : b.pieces_) bases.push_back(c);
        std::vector<Cylinder> atoms = refine_to_atoms(*a.graph_, bases);
        auto rebuild = [&](const LocallyConstant& f) {
            LocallyConstant out(*f.graph_);
            for (const Cylinder& atom : atoms) {
                for (const auto& [c, v] : f.pieces_)
                    if (cylinder_subset(atom, c)) {
                        out.pieces_.emplace_back(atom, v);
                        break;
                    }
            }
            return out;
        };
        return {rebuild(a), rebuild(b)};
    }

    // phi(f) = f o h^{-1}: pushes each base through the verified map.
    LocallyConstant pushforward(const CandidateHomeo& h) const {
        if (!h.verify().ok) throw UnverifiedMapError("pushforward needs a verified map");
        if (&h.domain_graph() != graph_)
            throw Error("pushforward: function lives over the wrong graph");
        LocallyConstant out(h.codomain_graph());
        for (const auto& [c, v] : pieces_)
            for (const Cylinder& im : h.image_cylinder(c)) out.pieces_.emplace_back(im, v);
        std::sort(out.pieces_.begin(), out.pieces_.end(),
                  [](const auto& a, const auto& b) { return CylinderLess{}(a.first, b.first); });
        return out;
    }

private:
    template <typename Op>
    static LocallyConstant pointwise(const LocallyConstant& a, const LocallyConstant& b,
                                     Op op) {
        if (a.graph_ != b.graph_)
            throw Error("locally constant functions live over different graphs");
        std::vector<Cylinder> bases;
        for (const auto& [c, v] : a.pieces_) bases.push_back(c);
        for (const auto& [c, v] : b.pieces_) bases.push_back(c);
        LocallyConstant out(*a.graph_);
        for (const Cylinder& atom : refine_to_atoms(*a.graph_, bases)) {
            V va{}, vb{};
            for (const auto& [c, v] : a.pieces_)
                if (cylinder_subset(atom, c)) {
                    va = v;
                    break;
                }
            for (const auto& [c, v] : b.pieces_)
                if (cylinder_subset(atom, c)) {
                    vb = v;
                    break;
                }
            V r = op(va, vb);
            if (!(r == V{})) out.pieces_.emplace_back(atom, r);
        }
        return out;
    }

    const DirectedGraph* graph_;
    std::vector<std::pair<Cylinder, V>> pieces_;
};

using IntegerFn = LocallyConstant<long long>;
using RationalFn = LocallyConstant<Rational>;
using ComplexFn = LocallyConstant<std::complex<double>>;

// The indicator of dom(sigma) (the union of the edge cylinders).
IntegerFn domain_indicator(const DirectedGraph& g);

// Indicators of all cylinders with base paths of length <= depth.
std::vector<Cylinder> cylinder_family(const DirectedGraph& g, int depth);

struct FunctionRouteReport {
    bool cond_upper = false;
    bool cond_lower = false;
    int depth = 0;
    std::string witness;  // first violating pair and a separating point
};

// The two function-operator characterisations of conjugacy, checked on the
// generating family of cylinder indicators up to the given depth: the
// multiplicative intertwining phi((sigma)^*(f) g) = (sigma)^*(phi f) phi(g)
// and the summing intertwining phi o (sigma)_* = (sigma)_* o phi together
// with phi(C_c(dom sigma_X)) = C_c(dom sigma_Y).  Both sides are evaluated
// exactly; indicators span all locally constant functions, so a clean pass
// certifies the conditions at this depth.
FunctionRouteReport check_function_route(const CandidateHomeo& h, int depth);

// File format: lines `cyl <path-literal> <value>`, summed over lines.
// Values: integer, rational p/q, or complex a+bi (floats).
IntegerFn parse_integer_function(const DirectedGraph& g, const std::string& text);
RationalFn parse_rational_function(const DirectedGraph& g, const std::string& text);
ComplexFn parse_complex_function(const DirectedGraph& g, const std::string& text);
IntegerFn load_integer_function_file(const DirectedGraph& g, const std::string& path);

}  // namespace drsys

#endif
